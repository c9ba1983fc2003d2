//! The primitive set constraints (`!ino`, `disjo`, `uniono`) and membership.

use super::store::{Constraint, TypeKind};
use super::{assert_type, diseq, then, vars_of};
use crate::state::State;
use crate::term::{flatten_set, Term};
use crate::unify::{fresh_set_var, unify};

pub(super) fn sets_typed(terms: &[&Term], st: State) -> Vec<State> {
    let mut frontier = vec![st];
    for t in terms {
        frontier = then(frontier, |s| assert_type(t, TypeKind::Set, s));
    }
    frontier
}

/// `el ∉ s`.
pub fn not_member(el: &Term, s: &Term, st: State) -> Vec<State> {
    then(sets_typed(&[s], st), |st| {
        let (elems, rest) = flatten_set(s, &st.subst);
        let mut frontier = vec![st];
        for e in &elems {
            frontier = then(frontier, |s| diseq(el, e, s));
        }
        then(frontier, |mut st| match &rest {
            Term::EmptySet => vec![st],
            Term::Var(r) => {
                // Sets are well founded, so nothing is a member of itself.
                if st.walk(el) == rest {
                    return vec![st];
                }
                let mut watched = vec![*r];
                watched.extend(vars_of(&st, &[el]));
                let c = Constraint::NotMember(st.walk_star(el), rest.clone());
                st.store.insert(c, watched);
                vec![st]
            }
            _ => Vec::new(),
        })
    })
}

/// `el ∈ s`: `el` unifies with one of the known elements, or the open rest
/// is extended with `el`. Alternatives are produced in element order.
pub fn member(el: &Term, s: &Term, st: State) -> Vec<State> {
    then(sets_typed(&[s], st), |st| {
        let (elems, rest) = flatten_set(s, &st.subst);
        let mut out = Vec::new();
        for e in &elems {
            out.extend(unify(el, e, st.clone()));
        }
        if let Term::Var(_) = rest {
            let mut st = st;
            let n = Term::Var(fresh_set_var(&mut st));
            out.extend(unify(&rest, &Term::set_cell(vec![el.clone()], n), st));
        }
        out
    })
}

/// `a ∩ b = ∅`.
pub fn disjoint(a: &Term, b: &Term, st: State) -> Vec<State> {
    then(sets_typed(&[a, b], st), |st| disjoint_sets(a, b, st))
}

fn disjoint_sets(a: &Term, b: &Term, mut st: State) -> Vec<State> {
    let a = st.walk(a);
    let b = st.walk(b);
    match (&a, &b) {
        (Term::EmptySet, _) | (_, Term::EmptySet) => vec![st],
        (Term::Var(x), Term::Var(y)) if x == y => unify(&a, &Term::EmptySet, st),
        (Term::Var(x), Term::Var(y)) => {
            st.store
                .insert(Constraint::Disjoint(a.clone(), b.clone()), vec![*x, *y]);
            vec![st]
        }
        (Term::Set(_), _) => split_disjoint(&a, &b, st),
        (_, Term::Set(_)) => split_disjoint(&b, &a, st),
        _ => Vec::new(),
    }
}

fn split_disjoint(cell: &Term, other: &Term, st: State) -> Vec<State> {
    let (elems, rest) = flatten_set(cell, &st.subst);
    let mut frontier = vec![st];
    for e in &elems {
        frontier = then(frontier, |s| not_member(e, other, s));
    }
    then(frontier, |s| disjoint_sets(&rest, other, s))
}

/// `a ∪ b = c`.
pub fn union(a: &Term, b: &Term, c: &Term, st: State) -> Vec<State> {
    then(sets_typed(&[a, b, c], st), |st| union_sets(a, b, c, st))
}

fn union_sets(a: &Term, b: &Term, c: &Term, mut st: State) -> Vec<State> {
    let a = st.walk(a);
    let b = st.walk(b);
    let c = st.walk(c);
    if a == Term::EmptySet {
        return unify(&b, &c, st);
    }
    if b == Term::EmptySet {
        return unify(&a, &c, st);
    }
    if c == Term::EmptySet {
        return then(unify(&a, &Term::EmptySet, st), |s| {
            unify(&b, &Term::EmptySet, s)
        });
    }
    if a.is_var() && a == b {
        return unify(&a, &c, st);
    }
    let whole = st.walk_star(&c);
    if st.walk_star(&a) == whole {
        return absorbed(&b, &c, st);
    }
    if st.walk_star(&b) == whole {
        return absorbed(&a, &c, st);
    }
    if let Term::Set(_) = c {
        return split_result(&a, &b, &c, st);
    }
    if let Term::Set(_) = a {
        return split_operand(&a, &b, &c, false, st);
    }
    if let Term::Set(_) = b {
        return split_operand(&b, &a, &c, true, st);
    }
    match (&a, &b, &c) {
        (Term::Var(x), Term::Var(y), Term::Var(z)) => {
            st.store.insert(
                Constraint::Union(a.clone(), b.clone(), c.clone()),
                vec![*x, *y, *z],
            );
            vec![st]
        }
        _ => Vec::new(),
    }
}

/// `part ∪ whole = whole`, i.e. `part ⊆ whole`: every known element of
/// `part` is a member of `whole`, and an open rest is constrained in turn.
fn absorbed(part: &Term, whole: &Term, st: State) -> Vec<State> {
    let (elems, rest) = flatten_set(part, &st.subst);
    let mut frontier = vec![st];
    for e in &elems {
        frontier = then(frontier, |s| member(e, whole, s));
    }
    then(frontier, |mut st| match &rest {
        Term::EmptySet => vec![st],
        Term::Var(_) => {
            let (_, tail) = flatten_set(whole, &st.subst);
            if tail == rest {
                return vec![st];
            }
            if tail == Term::EmptySet {
                // Splitting a proper result terminates: enumerate instead.
                return split_result(whole, &rest, whole, st);
            }
            let whole = st.walk_star(whole);
            let watched = vars_of(&st, &[&whole, &rest]);
            st.store.insert(
                Constraint::Union(whole.clone(), rest.clone(), whole),
                watched,
            );
            vec![st]
        }
        _ => Vec::new(),
    })
}

fn with_head(t: &Term, n: &Term) -> Term {
    Term::set_cell(vec![t.clone()], n.clone())
}

/// `c = {t | ..}`: write `c` as `{t | n}` with `t ∉ n`, then `t` comes from
/// `a` only, from `b` only, or from both.
fn split_result(a: &Term, b: &Term, c: &Term, mut st: State) -> Vec<State> {
    let (elems, _) = flatten_set(c, &st.subst);
    let t = elems[0].clone();
    let n = Term::Var(fresh_set_var(&mut st));
    let normalized = then(unify(c, &with_head(&t, &n), st), |s| not_member(&t, &n, s));

    then(normalized, |st| {
        let mut out = Vec::new();

        let mut s1 = st.clone();
        let n1 = Term::Var(fresh_set_var(&mut s1));
        let only_a = then(not_member(&t, b, s1), |s| unify(a, &with_head(&t, &n1), s));
        let only_a = then(only_a, |s| not_member(&t, &n1, s));
        out.extend(then(only_a, |s| union(&n1, b, &n, s)));

        let mut s2 = st.clone();
        let n2 = Term::Var(fresh_set_var(&mut s2));
        let only_b = then(not_member(&t, a, s2), |s| unify(b, &with_head(&t, &n2), s));
        let only_b = then(only_b, |s| not_member(&t, &n2, s));
        out.extend(then(only_b, |s| union(a, &n2, &n, s)));

        let mut s3 = st;
        let n1 = Term::Var(fresh_set_var(&mut s3));
        let n2 = Term::Var(fresh_set_var(&mut s3));
        let both = then(unify(a, &with_head(&t, &n1), s3), |s| {
            not_member(&t, &n1, s)
        });
        let both = then(both, |s| unify(b, &with_head(&t, &n2), s));
        let both = then(both, |s| not_member(&t, &n2, s));
        out.extend(then(both, |s| union(&n1, &n2, &n, s)));

        out
    })
}

/// `cell = {t | rest}` is an operand and `c` is unresolved: `c = {t | n}`,
/// and `t` is either absent from the other operand or peeled off it too.
fn split_operand(cell: &Term, other: &Term, c: &Term, swapped: bool, mut st: State) -> Vec<State> {
    let (elems, rest) = flatten_set(cell, &st.subst);
    let t = elems[0].clone();
    let cell_rest = Term::set_cell(elems[1..].to_vec(), rest);
    let n = Term::Var(fresh_set_var(&mut st));
    let ordered = |x: &Term, y: &Term, z: &Term, s: State| {
        if swapped {
            union(y, x, z, s)
        } else {
            union(x, y, z, s)
        }
    };
    then(unify(c, &with_head(&t, &n), st), |st| {
        let mut out = then(not_member(&t, other, st.clone()), |s| {
            ordered(&cell_rest, other, &n, s)
        });
        let mut s2 = st;
        let n2 = Term::Var(fresh_set_var(&mut s2));
        let peeled = then(unify(other, &with_head(&t, &n2), s2), |s| {
            not_member(&t, &n2, s)
        });
        out.extend(then(peeled, |s| ordered(&cell_rest, &n2, &n, s)));
        out
    })
}
