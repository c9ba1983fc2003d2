//! Generalized unification.
//!
//! Set unification has no unique most general unifier, so `unify` returns
//! a finite sequence of successor states. Rewriting happens in two layers:
//! [`unify_raw`] performs the structural and set rewriting and records the
//! variables it bound, then [`unify`] runs constraint propagation on each
//! candidate and drops the ones that fail.

use crate::constraints::propagate;
use crate::constraints::store::{Constraint, TypeKind};
use crate::state::State;
use crate::term::{flatten_set, occurs, Occurrence, Term, Var};

/// A candidate successor that has not been through propagation yet.
#[derive(Clone, Debug)]
pub(crate) struct Pending {
    pub st: State,
    pub bound: Vec<Var>,
}

impl Pending {
    pub fn new(st: State) -> Self {
        Pending {
            st,
            bound: Vec::new(),
        }
    }
}

/// Unify `u` and `v`, returning every consistent successor state.
pub fn unify(u: &Term, v: &Term, st: State) -> Vec<State> {
    unify_raw(u, v, Pending::new(st))
        .into_iter()
        .flat_map(|p| propagate(p.bound, p.st))
        .collect()
}

/// Unify two set terms. Both must walk to the empty set or a set cell.
pub fn unify_sets(a: &Term, b: &Term, st: State) -> Vec<State> {
    sets(a, b, Pending::new(st))
        .into_iter()
        .flat_map(|p| propagate(p.bound, p.st))
        .collect()
}

pub(crate) fn unify_raw(u: &Term, v: &Term, p: Pending) -> Vec<Pending> {
    let u = p.st.walk(u);
    let v = p.st.walk(v);
    if u == v {
        return vec![p];
    }
    match (&u, &v) {
        (Term::Var(x), _) => bind(*x, &v, p),
        (_, Term::Var(y)) => bind(*y, &u, p),
        (Term::Pair(a), Term::Pair(b)) => unify_raw(&a.0, &b.0, p)
            .into_iter()
            .flat_map(|q| unify_raw(&a.1, &b.1, q))
            .collect(),
        (Term::EmptySet | Term::Set(_), Term::EmptySet | Term::Set(_)) => sets(&u, &v, p),
        _ => Vec::new(),
    }
}

fn bind(x: Var, t: &Term, mut p: Pending) -> Vec<Pending> {
    match occurs(x, t, &p.st.subst) {
        Occurrence::Absent => {
            p.st.subst = p.st.subst.extend(x, t.clone());
            p.bound.push(x);
            vec![p]
        }
        Occurrence::InElement => Vec::new(),
        Occurrence::InSetTail => {
            // x = {e.. | x}  ~>  x = {e.. | n}, n a fresh set.
            let (elems, _) = flatten_set(t, &p.st.subst);
            let n = fresh_set_var(&mut p.st);
            p.st.subst = p.st.subst.extend(x, Term::set_cell(elems, Term::Var(n)));
            p.bound.push(x);
            vec![p]
        }
    }
}

/// A fresh variable already carrying the `seto` type constraint.
pub(crate) fn fresh_set_var(st: &mut State) -> Var {
    let n = st.fresh();
    st.store.insert(Constraint::Type(TypeKind::Set, n), vec![n]);
    n
}

fn sets(a: &Term, b: &Term, p: Pending) -> Vec<Pending> {
    let (ea, ra) = flatten_set(a, &p.st.subst);
    let (eb, rb) = flatten_set(b, &p.st.subst);
    let well_formed = |r: &Term| matches!(r, Term::EmptySet | Term::Var(_));
    if !well_formed(&ra) || !well_formed(&rb) {
        return Vec::new();
    }
    match (ea.is_empty(), eb.is_empty()) {
        // Both sides walked to sets, so an empty element run means `#(set)`.
        (true, true) => return vec![p],
        (true, false) | (false, true) => return Vec::new(),
        (false, false) => {}
    }
    match (&ra, &rb) {
        (Term::Var(x), Term::Var(y)) if x == y => shared_tail(&ea, &eb, *x, p),
        _ => distinct_tails(&ea, &ra, &eb, &rb, p),
    }
}

fn tail_of(elems: &[Term], rest: &Term) -> Term {
    Term::set_cell(elems[1..].to_vec(), rest.clone())
}

/// `{t | s1} = {t' | s2}` where the final tails differ.
fn distinct_tails(ea: &[Term], ra: &Term, eb: &[Term], rb: &Term, p: Pending) -> Vec<Pending> {
    let t = &ea[0];
    let t2 = &eb[0];
    let s1 = tail_of(ea, ra);
    let s2 = tail_of(eb, rb);
    let whole_a = Term::set_cell(ea.to_vec(), ra.clone());
    let whole_b = Term::set_cell(eb.to_vec(), rb.clone());

    let mut out = Vec::new();
    let heads = unify_raw(t, t2, p.clone());
    for q in &heads {
        out.extend(unify_raw(&s1, &s2, q.clone()));
    }
    for q in &heads {
        out.extend(unify_raw(&whole_a, &s2, q.clone()));
    }
    for q in heads {
        out.extend(unify_raw(&s1, &whole_b, q));
    }
    let mut q = p;
    let n = Term::Var(fresh_set_var(&mut q.st));
    for r in unify_raw(&s1, &Term::set_cell(vec![t2.clone()], n.clone()), q) {
        out.extend(unify_raw(
            &Term::set_cell(vec![t.clone()], n.clone()),
            &s2,
            r,
        ));
    }
    out
}

/// `{t1..tm | x} = {u1..un | x}`. The generic rule would loop on the shared
/// tail, so each `uj` is tried as the partner of `t1` directly, with the
/// same three head variants as the generic rule, followed by absorbing
/// `t1` into `x`.
fn shared_tail(ea: &[Term], eb: &[Term], x: Var, p: Pending) -> Vec<Pending> {
    let tail = Term::Var(x);
    let t1 = &ea[0];
    let a_rest = Term::set_cell(ea[1..].to_vec(), tail.clone());
    let a_whole = Term::set_cell(ea.to_vec(), tail.clone());
    let b_whole = Term::set_cell(eb.to_vec(), tail.clone());
    let mut out = Vec::new();
    for j in 0..eb.len() {
        let mut without = eb.to_vec();
        without.remove(j);
        let b_rest = Term::set_cell(without, tail.clone());
        for q in unify_raw(t1, &eb[j], p.clone()) {
            out.extend(unify_raw(&a_rest, &b_rest, q.clone()));
            out.extend(unify_raw(&a_whole, &b_rest, q.clone()));
            out.extend(unify_raw(&a_rest, &b_whole, q));
        }
    }
    let mut q = p;
    let n = Term::Var(fresh_set_var(&mut q.st));
    for r in unify_raw(&tail, &Term::set_cell(vec![t1.clone()], n.clone()), q) {
        out.extend(unify_raw(
            &Term::set_cell(ea[1..].to_vec(), n.clone()),
            &Term::set_cell(eb.to_vec(), n.clone()),
            r,
        ));
    }
    out
}
