//! Disequality.
//!
//! `u ≠ v` is decided by speculatively unifying the two terms. When that
//! unification is a single pure conjunction of variable bindings, its
//! negation is a disjunction of `x ≠ t` literals and is stored in watched
//! form: only the first literal's variables are indexed, so bindings
//! elsewhere never revisit it. Anything else (several unifiers, fresh
//! variables, auxiliary constraints) is stored in general form and
//! re-decided whenever one of its variables is bound.

use super::propagate;
use super::store::{Constraint, Diseq};
use super::vars_of;
use crate::state::State;
use crate::term::Term;
use crate::unify::{unify_raw, Pending};

pub fn diseq(u: &Term, v: &Term, st: State) -> Vec<State> {
    let before = st.footprint();
    let raw = unify_raw(u, v, Pending::new(st.clone()));
    if raw.is_empty() {
        return vec![st];
    }
    if raw.iter().any(|p| p.st.footprint() == before) {
        // Already equal.
        return Vec::new();
    }
    let structural = raw.len() == 1 && {
        let (_, rev, next) = raw[0].st.footprint();
        rev == before.1 && next == before.2
    };
    // If no unifier survives propagation the terms can never be equal.
    let viable: Vec<State> = raw
        .iter()
        .flat_map(|p| propagate(p.bound.clone(), p.st.clone()))
        .collect();
    if viable.is_empty() {
        return vec![st];
    }
    let mut st = st;
    if structural {
        let p = &raw[0];
        let pairs: Vec<_> = p
            .bound
            .iter()
            .map(|x| (*x, p.st.subst.get(*x).cloned().expect("bound var")))
            .collect();
        let (x, t) = &pairs[0];
        let mut watched = vec![*x];
        if let Term::Var(y) = st.walk(t) {
            watched.push(y);
        }
        st.store
            .insert(Constraint::Diseq(Diseq::Watched { pairs }), watched);
    } else {
        let watched = vars_of(&st, &[u, v]);
        if watched.is_empty() {
            // Ground, and a unifier survived: the terms are equal sets
            // written differently.
            return Vec::new();
        }
        let c = Constraint::Diseq(Diseq::General(st.walk_star(u), st.walk_star(v)));
        st.store.insert(c, watched);
    }
    vec![st]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Probe;
    use crate::unify::unify;

    #[test]
    fn distinct_atoms_need_no_constraint() {
        let out = diseq(&Term::sym("a"), &Term::sym("b"), State::new());
        assert_eq!(out.len(), 1);
        assert!(out[0].store().is_empty());
    }

    #[test]
    fn a_term_is_never_distinct_from_itself() {
        let mut st = State::new();
        let x = st.fresh_term();
        assert!(diseq(&x, &x, st).is_empty());
    }

    #[test]
    fn structural_disequality_is_watched() {
        let mut st = State::new();
        let x = st.fresh_term();
        let st = diseq(&x, &Term::sym("lambda"), st).pop().unwrap();
        match st.store().iter().next() {
            Some(Constraint::Diseq(Diseq::Watched { pairs })) => assert_eq!(pairs.len(), 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(unify(&x, &Term::sym("lambda"), st.clone()).is_empty());
        assert_eq!(unify(&x, &Term::sym("mu"), st).len(), 1);
    }

    #[test]
    fn differently_written_equal_sets_are_not_distinct() {
        let a = Term::set_of(vec![Term::num(1), Term::num(2)]);
        let b = Term::set_cell(vec![Term::num(2)], Term::set_of(vec![Term::num(1)]));
        assert!(diseq(&a, &b, State::new()).is_empty());
    }

    #[test]
    fn set_disequality_is_general() {
        let mut st = State::new();
        let x = st.fresh_term();
        let lhs = Term::set_cell(vec![Term::num(1)], x.clone());
        let st = diseq(&lhs, &Term::set_of(vec![Term::num(1)]), st)
            .pop()
            .unwrap();
        assert!(matches!(
            st.store().iter().next(),
            Some(Constraint::Diseq(Diseq::General(..)))
        ));
        assert!(unify(&x, &Term::EmptySet, st.clone()).is_empty());
        assert!(unify(&x, &Term::set_of(vec![Term::num(1)]), st.clone()).is_empty());
        assert_eq!(unify(&x, &Term::set_of(vec![Term::num(2)]), st).len(), 1);
    }

    #[test]
    fn unrelated_bindings_do_not_wake_watched_literals() {
        let probe = Probe::new();
        let mut st = State::new().with_probe(probe.clone());
        let x = st.fresh_term();
        let y = st.fresh_term();
        let z = st.fresh_term();
        let st = diseq(&x, &y, st).pop().unwrap();
        let st = unify(&z, &Term::num(1), st).pop().unwrap();
        assert_eq!(probe.watched_rechecks(), 0);
        let _ = unify(&x, &Term::num(1), st);
        assert_eq!(probe.watched_rechecks(), 1);
    }
}
