use super::store::{Constraint, TypeKind};
use super::{assert_type, diseq, then};
use crate::state::State;
use crate::term::{flatten_set, Term};

/// `p` is absent from every proper subterm of `q`.
///
/// The components of a pair are its head and tail. The components of a
/// set are its elements only: the rest of an improper set contributes its
/// own elements, never itself, so the representation of a set cannot leak
/// through this constraint.
pub fn sub_absent(p: &Term, q: &Term, mut st: State) -> Vec<State> {
    let q = st.walk(q);
    match &q {
        Term::Atom(_) | Term::EmptySet => vec![st],
        Term::Var(v) => {
            st.store
                .insert(Constraint::SubAbsent(st.walk_star(p), q.clone()), vec![*v]);
            vec![st]
        }
        Term::Pair(pair) => {
            let parts = [pair.0.clone(), pair.1.clone()];
            absent_from_each(p, &parts, st)
        }
        Term::Set(_) => {
            let (elems, rest) = flatten_set(&q, &st.subst);
            let frontier = absent_from_each(p, &elems, st);
            match rest {
                Term::EmptySet => frontier,
                Term::Var(_) => then(frontier, |s| {
                    then(assert_type(&rest, TypeKind::Set, s), |s| {
                        sub_absent(p, &rest, s)
                    })
                }),
                _ => Vec::new(),
            }
        }
    }
}

fn absent_from_each(p: &Term, parts: &[Term], st: State) -> Vec<State> {
    let mut frontier = vec![st];
    for c in parts {
        frontier = then(frontier, |s| diseq(p, c, s));
        frontier = then(frontier, |s| sub_absent(p, c, s));
    }
    frontier
}

/// `p ≠ q` together with `p` absent from every subterm of `q`. Not stored
/// as such; reification shows it again when both halves hold.
pub fn absento(p: &Term, q: &Term, st: State) -> Vec<State> {
    then(diseq(p, q, st), |s| sub_absent(p, q, s))
}
