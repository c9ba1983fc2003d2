//! Set relations defined from the primitives. Existentials become fresh
//! variables and disjunctions concatenate their alternatives.

use super::sets::sets_typed;
use super::{disjoint, member, not_member, then, union};
use crate::state::State;
use crate::term::Term;
use crate::unify::unify;

/// `l ⊎ r = c`: `l ∪ r = c ∧ l ∩ r = ∅`.
pub fn union_plus(l: &Term, r: &Term, c: &Term, st: State) -> Vec<State> {
    then(union(l, r, c, st), |s| disjoint(l, r, s))
}

/// `l ∪ r ≠ c`: some `n` is in `c` but in neither operand, or in an
/// operand but not in `c`. All three must be sets.
pub fn not_union(l: &Term, r: &Term, c: &Term, st: State) -> Vec<State> {
    then(sets_typed(&[l, r, c], st), |s| not_union_typed(l, r, c, s))
}

fn not_union_typed(l: &Term, r: &Term, c: &Term, mut st: State) -> Vec<State> {
    let n = st.fresh_term();
    let missing = then(member(&n, c, st.clone()), |s| not_member(&n, l, s));
    let mut out = then(missing, |s| not_member(&n, r, s));
    for operand in [l, r] {
        let extra = member(&n, operand, st.clone());
        out.extend(then(extra, |s| not_member(&n, c, s)));
    }
    out
}

/// `l ∩ r ≠ ∅`.
pub fn not_disjoint(l: &Term, r: &Term, mut st: State) -> Vec<State> {
    let n = st.fresh_term();
    then(member(&n, l, st), |s| member(&n, r, s))
}

/// `b ⊆ p`: `b ∪ p = p`.
pub fn subseteq(b: &Term, p: &Term, st: State) -> Vec<State> {
    union(b, p, p, st)
}

/// `b ⊂ p`: `b ⊆ p` and some element of `p` is missing from `b`.
pub fn subset(b: &Term, p: &Term, st: State) -> Vec<State> {
    then(subseteq(b, p, st), |mut s| {
        let n = s.fresh_term();
        then(member(&n, p, s), |s| not_member(&n, b, s))
    })
}

/// `l - {o} = w`: `o ∉ w ∧ (l = {o | w} ∨ l = w)`.
pub fn subtract(l: &Term, o: &Term, w: &Term, st: State) -> Vec<State> {
    then(not_member(o, w, st), |s| {
        let mut out = unify(l, &Term::set_cell(vec![o.clone()], w.clone()), s.clone());
        out.extend(unify(l, w, s));
        out
    })
}
