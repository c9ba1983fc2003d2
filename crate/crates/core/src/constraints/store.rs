//! Variable-indexed store of suspended constraints.

use im::{HashMap, OrdMap, OrdSet};

use crate::term::{Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKind {
    Set,
    Symbol,
    Number,
    List,
}

impl TypeKind {
    /// Reified annotation token.
    pub fn token(self) -> &'static str {
        match self {
            TypeKind::Set => "set",
            TypeKind::Symbol => "sym",
            TypeKind::Number => "num",
            TypeKind::List => "lst",
        }
    }
}

/// A disequality kept in the store.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Diseq {
    /// Negated conjunction of structural bindings: at least one `var = term`
    /// must fail. Only the first binding is watched.
    Watched { pairs: Vec<(Var, Term)> },
    /// Arbitrary disequality, re-decided whenever any of its variables is
    /// bound.
    General(Term, Term),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    Type(TypeKind, Var),
    NotMember(Term, Term),
    Disjoint(Term, Term),
    Union(Term, Term, Term),
    Diseq(Diseq),
    SubAbsent(Term, Term),
    Free(Term, Term),
    Lookup(Term, Term, Term),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry {
    constraint: Constraint,
    watched: Vec<Var>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintId(u64);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintStore {
    entries: OrdMap<ConstraintId, Entry>,
    index: HashMap<Var, OrdSet<ConstraintId>>,
    next_id: u64,
}

impl ConstraintStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Monotone counter bumped by every effective insertion.
    pub fn revision(&self) -> u64 {
        self.next_id
    }

    /// Suspend `c`, indexed under `watched` (which must be non-empty).
    /// Inserting a constraint already present under the same first watch
    /// is a no-op.
    pub fn insert(&mut self, constraint: Constraint, watched: Vec<Var>) {
        debug_assert!(!watched.is_empty(), "suspended constraint needs a watch");
        let mut watched = watched;
        watched.dedup();
        if let Some(ids) = self.index.get(&watched[0]) {
            if ids.iter().any(|id| {
                self.entries
                    .get(id)
                    .is_some_and(|e| e.constraint == constraint)
            }) {
                return;
            }
        }
        let id = ConstraintId(self.next_id);
        self.next_id += 1;
        for v in &watched {
            self.index.entry(*v).or_default().insert(id);
        }
        self.entries.insert(
            id,
            Entry {
                constraint,
                watched,
            },
        );
    }

    /// Remove and return, in insertion order, every constraint watching any
    /// of `vars`.
    pub fn take_watching(&mut self, vars: &[Var]) -> Vec<Constraint> {
        let mut ids: Vec<ConstraintId> = vars
            .iter()
            .filter_map(|v| self.index.get(v))
            .flat_map(|set| set.iter().copied())
            .collect();
        ids.sort();
        ids.dedup();
        ids.into_iter().filter_map(|id| self.remove(id)).collect()
    }

    fn remove(&mut self, id: ConstraintId) -> Option<Constraint> {
        let entry = self.entries.remove(&id)?;
        for v in &entry.watched {
            if let Some(set) = self.index.get_mut(v) {
                set.remove(&id);
                if set.is_empty() {
                    self.index.remove(v);
                }
            }
        }
        Some(entry.constraint)
    }

    /// Constraints watching `v`, in insertion order.
    pub fn watching(&self, v: Var) -> impl Iterator<Item = &Constraint> + '_ {
        self.index
            .get(&v)
            .into_iter()
            .flat_map(|ids| ids.iter())
            .filter_map(move |id| self.entries.get(id).map(|e| &e.constraint))
    }

    pub fn type_of(&self, v: Var) -> Option<TypeKind> {
        self.watching(v).find_map(|c| match c {
            Constraint::Type(k, w) if *w == v => Some(*k),
            _ => None,
        })
    }

    /// All constraints in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &Constraint> + '_ {
        self.entries.values().map(|e| &e.constraint)
    }
}
