use super::store::{Constraint, TypeKind};
use crate::state::State;
use crate::term::{flatten_set, Atom, Term, Var};

/// `seto`, `symbolo`, `numbero` and `listo`.
///
/// `seto` and `listo` are recursive: a set's rest and a list's tail must
/// themselves be sets and lists. Unresolved positions are suspended on
/// their variable.
pub fn assert_type(t: &Term, kind: TypeKind, st: State) -> Vec<State> {
    let mut cur = st.walk(t);
    loop {
        match (kind, &cur) {
            (_, Term::Var(v)) => return suspend(kind, *v, st),
            (TypeKind::Set, Term::EmptySet) => return vec![st],
            (TypeKind::Set, Term::Set(_)) => {
                let (_, rest) = flatten_set(&cur, &st.subst);
                match rest {
                    Term::EmptySet => return vec![st],
                    Term::Var(v) => return suspend(kind, v, st),
                    _ => return Vec::new(),
                }
            }
            (TypeKind::Symbol, Term::Atom(Atom::Sym(_)))
            | (TypeKind::Number, Term::Atom(Atom::Num(_)))
            | (TypeKind::List, Term::Atom(Atom::Nil)) => return vec![st],
            (TypeKind::List, Term::Pair(p)) => cur = st.walk(&p.1),
            _ => return Vec::new(),
        }
    }
}

fn suspend(kind: TypeKind, v: Var, mut st: State) -> Vec<State> {
    match st.store.type_of(v) {
        Some(k) if k == kind => vec![st],
        // The four kinds are pairwise disjoint.
        Some(_) => Vec::new(),
        None => {
            st.store.insert(Constraint::Type(kind, v), vec![v]);
            vec![st]
        }
    }
}
