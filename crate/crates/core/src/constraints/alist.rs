//! Association-list constraints: `freeo` and `lookupo`.

use super::store::{Constraint, TypeKind};
use super::{assert_type, diseq, then};
use crate::state::State;
use crate::term::{Atom, Term, Var};
use crate::unify::unify;

/// Make sure `cell` is a `(key . value)` pair, returning its components.
fn as_binding(cell: &Term, st: State) -> Vec<(State, Term, Term)> {
    match st.walk(cell) {
        Term::Pair(p) => vec![(st, p.0.clone(), p.1.clone())],
        h @ Term::Var(_) => {
            let mut st = st;
            let k0 = st.fresh_term();
            let v0 = st.fresh_term();
            unify(&h, &Term::cons(k0.clone(), v0.clone()), st)
                .into_iter()
                .map(|s| (s, k0.clone(), v0.clone()))
                .collect()
        }
        _ => Vec::new(),
    }
}

/// `l` is a proper association list that binds no key equal to `k`.
pub fn free(k: &Term, l: &Term, st: State) -> Vec<State> {
    match st.walk(l) {
        Term::Atom(Atom::Nil) => vec![st],
        Term::Pair(p) => {
            let mut out = Vec::new();
            for (s, k0, _) in as_binding(&p.0, st) {
                out.extend(then(diseq(&k0, k, s), |s| free(k, &p.1, s)));
            }
            out
        }
        Term::Var(x) => then(assert_type(&Term::Var(x), TypeKind::List, st), |mut s| {
            let keys = lookup_keys(&s, x);
            s.store
                .insert(Constraint::Free(s.walk_star(k), Term::Var(x)), vec![x]);
            let mut frontier = vec![s];
            // A key free in `l` differs from every key `l` is known to bind.
            for k2 in keys {
                frontier = then(frontier, |s| diseq(k, &k2, s));
            }
            frontier
        }),
        _ => Vec::new(),
    }
}

/// `l` associates `k` with `v`, the leftmost binding of `k` winning. Only
/// the spine up to the matching binding is forced.
pub fn lookup(k: &Term, l: &Term, v: &Term, st: State) -> Vec<State> {
    match st.walk(l) {
        Term::Pair(p) => {
            let mut out = Vec::new();
            for (s, k0, v0) in as_binding(&p.0, st) {
                let here = then(unify(&k0, k, s.clone()), |s| unify(&v0, v, s));
                out.extend(here);
                let later = then(diseq(&k0, k, s), |s| lookup(k, &p.1, v, s));
                out.extend(later);
            }
            out
        }
        Term::Var(x) => {
            let mut st = st;
            let keys = free_keys(&st, x);
            let c = Constraint::Lookup(st.walk_star(k), Term::Var(x), st.walk_star(v));
            st.store.insert(c, vec![x]);
            let mut frontier = vec![st];
            for k1 in keys {
                frontier = then(frontier, |s| diseq(&k1, k, s));
            }
            frontier
        }
        _ => Vec::new(),
    }
}

fn lookup_keys(st: &State, l: Var) -> Vec<Term> {
    st.store
        .watching(l)
        .filter_map(|c| match c {
            Constraint::Lookup(k, list, _) if st.walk(list) == Term::Var(l) => Some(k.clone()),
            _ => None,
        })
        .collect()
}

fn free_keys(st: &State, l: Var) -> Vec<Term> {
    st.store
        .watching(l)
        .filter_map(|c| match c {
            Constraint::Free(k, list) if st.walk(list) == Term::Var(l) => Some(k.clone()),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alist(pairs: &[(&str, i64)]) -> Term {
        Term::list(
            pairs
                .iter()
                .map(|(k, v)| Term::cons(Term::sym(k), Term::num(*v)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn free_in_empty_and_bound_lists() {
        assert_eq!(free(&Term::sym("x"), &Term::nil(), State::new()).len(), 1);
        assert!(free(&Term::sym("x"), &alist(&[("x", 1)]), State::new()).is_empty());
        assert_eq!(
            free(&Term::sym("y"), &alist(&[("x", 1)]), State::new()).len(),
            1
        );
    }

    #[test]
    fn lookup_honours_shadowing() {
        let mut st = State::new();
        let v = st.fresh_term();
        let out = lookup(&Term::sym("x"), &alist(&[("x", 1), ("x", 2)]), &v, st);
        let vals: Vec<Term> = out.iter().map(|s| s.walk(&v)).collect();
        assert_eq!(vals, vec![Term::num(1)]);
        assert!(lookup(
            &Term::sym("y"),
            &alist(&[("x", 1)]),
            &Term::num(1),
            State::new()
        )
        .is_empty());
    }

    #[test]
    fn binding_the_list_fires_suspensions() {
        let mut st = State::new();
        let l = st.fresh_term();
        let v = st.fresh_term();
        let pending = lookup(&Term::sym("k"), &l, &v, st).pop().unwrap();
        assert!(unify(&l, &Term::nil(), pending).is_empty());

        let mut st = State::new();
        let l = st.fresh_term();
        let pending = free(&Term::sym("k"), &l, st).pop().unwrap();
        let done = unify(&l, &Term::nil(), pending);
        assert_eq!(done.len(), 1);
        assert!(done[0].store().is_empty());
    }

    #[test]
    fn free_and_lookup_on_the_same_list_force_distinct_keys() {
        let mut st = State::new();
        let p = st.fresh_term();
        let q = st.fresh_term();
        let r = st.fresh_term();
        let st = free(&p, &r, st).pop().unwrap();
        let st = lookup(&q, &r, &q, st).pop().unwrap();
        assert!(unify(&p, &q, st.clone()).is_empty());
        // Same key on both sides is contradictory.
        let mut st = State::new();
        let r = st.fresh_term();
        let st = free(&Term::sym("a"), &r, st).pop().unwrap();
        assert!(lookup(&Term::sym("a"), &r, &Term::num(1), st).is_empty());
    }
}
