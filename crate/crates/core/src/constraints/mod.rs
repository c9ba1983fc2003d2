//! Constraint store and propagation.
//!
//! Every constraint operation maps one state to a finite sequence of
//! successor states. A constraint that cannot be decided yet is suspended
//! in the store, indexed on the unbound variables whose binding could
//! decide it; [`propagate`] re-fires those entries after each unification.

mod absent;
mod alist;
mod derived;
mod diseq;
mod sets;
pub mod store;
mod types;

pub use absent::{absento, sub_absent};
pub use alist::{free, lookup};
pub use derived::{not_disjoint, not_union, subset, subseteq, subtract, union_plus};
pub use diseq::diseq;
pub use sets::{disjoint, member, not_member, union};
pub use types::assert_type;

use crate::state::State;
use crate::term::{Term, Var};
use store::{Constraint, Diseq, TypeKind};

/// Every builtin constraint goal, by its surface name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Seto,
    Symbolo,
    Numbero,
    Listo,
    Diseq,
    NotMember,
    Member,
    Disjoint,
    NotDisjoint,
    Union,
    NotUnion,
    UnionPlus,
    Subseteq,
    Subset,
    Subtract,
    Free,
    Lookup,
    Absento,
    SubAbsento,
}

impl Op {
    pub const ALL: [Op; 19] = [
        Op::Seto,
        Op::Symbolo,
        Op::Numbero,
        Op::Listo,
        Op::Diseq,
        Op::NotMember,
        Op::Member,
        Op::Disjoint,
        Op::NotDisjoint,
        Op::Union,
        Op::NotUnion,
        Op::UnionPlus,
        Op::Subseteq,
        Op::Subset,
        Op::Subtract,
        Op::Free,
        Op::Lookup,
        Op::Absento,
        Op::SubAbsento,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Seto => "seto",
            Op::Symbolo => "symbolo",
            Op::Numbero => "numbero",
            Op::Listo => "listo",
            Op::Diseq => "=/=",
            Op::NotMember => "!ino",
            Op::Member => "ino",
            Op::Disjoint => "disjo",
            Op::NotDisjoint => "!disjo",
            Op::Union => "uniono",
            Op::NotUnion => "!uniono",
            Op::UnionPlus => "union+o",
            Op::Subseteq => "subseteqo",
            Op::Subset => "subseto",
            Op::Subtract => "subtracto",
            Op::Free => "freeo",
            Op::Lookup => "lookupo",
            Op::Absento => "absento",
            Op::SubAbsento => "sub-absento",
        }
    }

    pub fn from_name(name: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Op::Seto | Op::Symbolo | Op::Numbero | Op::Listo => 1,
            Op::Union | Op::NotUnion | Op::UnionPlus | Op::Subtract | Op::Lookup => 3,
            _ => 2,
        }
    }

    /// Apply to exactly [`Op::arity`] arguments.
    pub fn apply(self, args: &[Term], st: State) -> Vec<State> {
        assert_eq!(
            args.len(),
            self.arity(),
            "{} takes {} arguments",
            self.name(),
            self.arity()
        );
        let a = &args[0];
        match self {
            Op::Seto => assert_type(a, TypeKind::Set, st),
            Op::Symbolo => assert_type(a, TypeKind::Symbol, st),
            Op::Numbero => assert_type(a, TypeKind::Number, st),
            Op::Listo => assert_type(a, TypeKind::List, st),
            Op::Diseq => diseq(a, &args[1], st),
            Op::NotMember => not_member(a, &args[1], st),
            Op::Member => member(a, &args[1], st),
            Op::Disjoint => disjoint(a, &args[1], st),
            Op::NotDisjoint => not_disjoint(a, &args[1], st),
            Op::Union => union(a, &args[1], &args[2], st),
            Op::NotUnion => not_union(a, &args[1], &args[2], st),
            Op::UnionPlus => union_plus(a, &args[1], &args[2], st),
            Op::Subseteq => subseteq(a, &args[1], st),
            Op::Subset => subset(a, &args[1], st),
            Op::Subtract => subtract(a, &args[1], &args[2], st),
            Op::Free => free(a, &args[1], st),
            Op::Lookup => lookup(a, &args[1], &args[2], st),
            Op::Absento => absento(a, &args[1], st),
            Op::SubAbsento => sub_absent(a, &args[1], st),
        }
    }
}

/// Sequential conjunction over a finite fan-out.
pub(crate) fn then<F>(states: Vec<State>, mut f: F) -> Vec<State>
where
    F: FnMut(State) -> Vec<State>,
{
    let mut out = Vec::new();
    for st in states {
        out.extend(f(st));
    }
    out
}

/// Re-fire every suspended constraint watching one of `bound`, to fixpoint.
/// Woken constraints are resumed in insertion order; any bindings they make
/// propagate recursively through [`crate::unify::unify`].
pub fn propagate(bound: Vec<Var>, mut st: State) -> Vec<State> {
    if bound.is_empty() {
        return vec![st];
    }
    let woken = st.store.take_watching(&bound);
    let mut frontier = vec![st];
    for c in woken {
        frontier = then(frontier, |s| resume(&c, s));
        if frontier.is_empty() {
            break;
        }
    }
    frontier
}

fn resume(c: &Constraint, st: State) -> Vec<State> {
    match c {
        Constraint::Type(kind, v) => assert_type(&Term::Var(*v), *kind, st),
        Constraint::NotMember(e, s) => not_member(e, s, st),
        Constraint::Disjoint(a, b) => disjoint(a, b, st),
        Constraint::Union(a, b, c) => union(a, b, c, st),
        Constraint::Diseq(Diseq::Watched { pairs }) => {
            if let Some(p) = &st.probe {
                p.note_watched_recheck();
            }
            let (vars, terms): (Vec<Term>, Vec<Term>) = pairs
                .iter()
                .map(|(v, t)| (Term::Var(*v), t.clone()))
                .unzip();
            diseq(&Term::list(vars), &Term::list(terms), st)
        }
        Constraint::Diseq(Diseq::General(u, v)) => diseq(u, v, st),
        Constraint::SubAbsent(p, q) => sub_absent(p, q, st),
        Constraint::Free(k, l) => free(k, l, st),
        Constraint::Lookup(k, l, v) => lookup(k, l, v, st),
    }
}

/// Variables of the fully walked term, for indexing a suspension.
pub(crate) fn vars_of(st: &State, terms: &[&Term]) -> Vec<Var> {
    let mut out = Vec::new();
    for t in terms {
        st.walk_star(t).collect_vars(&mut out);
    }
    out
}
