//! Terms, walking, occurs checking and canonical set normalization.
//!
//! A set is either [`Term::EmptySet`] or a [`Term::Set`] cell holding a
//! non-empty run of elements followed by a rest term. The rest of a
//! well-formed set is the empty set, another cell, or a variable; anything
//! else is tolerated at construction time and rejected by the `seto`
//! constraint.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::subst::Substitution;

/// A logic variable, identified by a number that is unique within a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

/// Atomic values. The variant order matches the term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Num(i64),
    Sym(Arc<str>),
    Bool(bool),
    Nil,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetCell {
    pub elems: Vec<Term>,
    pub rest: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Atom(Atom),
    Pair(Arc<(Term, Term)>),
    Var(Var),
    EmptySet,
    Set(Arc<SetCell>),
}

impl Term {
    pub fn sym(name: &str) -> Term {
        Term::Atom(Atom::Sym(Arc::from(name)))
    }

    pub fn num(n: i64) -> Term {
        Term::Atom(Atom::Num(n))
    }

    pub fn nil() -> Term {
        Term::Atom(Atom::Nil)
    }

    pub fn boolean(b: bool) -> Term {
        Term::Atom(Atom::Bool(b))
    }

    pub fn var(id: u32) -> Term {
        Term::Var(Var(id))
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::Pair(Arc::new((head, tail)))
    }

    /// A proper list of the given items.
    pub fn list<I>(items: I) -> Term
    where
        I: IntoIterator<Item = Term>,
        I::IntoIter: DoubleEndedIterator,
    {
        items
            .into_iter()
            .rev()
            .fold(Term::nil(), |acc, t| Term::cons(t, acc))
    }

    /// `{elems | rest}`; an empty element run yields `rest` itself.
    pub fn set_cell(elems: Vec<Term>, rest: Term) -> Term {
        if elems.is_empty() {
            rest
        } else {
            Term::Set(Arc::new(SetCell { elems, rest }))
        }
    }

    /// A proper set holding exactly `elems`.
    pub fn set_of(elems: Vec<Term>) -> Term {
        Term::set_cell(elems, Term::EmptySet)
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_set(&self) -> bool {
        matches!(self, Term::EmptySet | Term::Set(_))
    }

    /// True when no variable occurs anywhere in the term.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Atom(_) | Term::EmptySet => true,
            Term::Var(_) => false,
            Term::Pair(p) => p.0.is_ground() && p.1.is_ground(),
            Term::Set(c) => c.elems.iter().all(Term::is_ground) && c.rest.is_ground(),
        }
    }

    /// Every variable in the term, in first-occurrence order, without repeats.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Atom(_) | Term::EmptySet => {}
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::Pair(p) => {
                p.0.collect_vars(out);
                p.1.collect_vars(out);
            }
            Term::Set(c) => {
                for e in &c.elems {
                    e.collect_vars(out);
                }
                c.rest.collect_vars(out);
            }
        }
    }
}

impl From<i64> for Term {
    fn from(n: i64) -> Self {
        Term::num(n)
    }
}

impl From<&str> for Term {
    fn from(s: &str) -> Self {
        Term::sym(s)
    }
}

impl From<Var> for Term {
    fn from(v: Var) -> Self {
        Term::Var(v)
    }
}

/// Resolve top-level variable chains.
pub fn walk(t: &Term, s: &Substitution) -> Term {
    let mut cur = t;
    while let Term::Var(v) = cur {
        match s.get(*v) {
            Some(next) => cur = next,
            None => break,
        }
    }
    cur.clone()
}

/// Walk every position of the term. Set cells are rebuilt with their
/// rest chains flattened into one cell.
pub fn walk_star(t: &Term, s: &Substitution) -> Term {
    match walk(t, s) {
        Term::Pair(p) => Term::cons(walk_star(&p.0, s), walk_star(&p.1, s)),
        Term::Set(_) => {
            let t = walk(t, s);
            let (elems, rest) = flatten_set(&t, s);
            let elems = elems.iter().map(|e| walk_star(e, s)).collect();
            Term::set_cell(elems, rest)
        }
        other => other,
    }
}

/// Split a (walked) set term into its elements and its final rest.
///
/// The rest is the walked tail that is not itself a set cell: the empty
/// set, a variable, or an ill-formed non-set term.
pub fn flatten_set(t: &Term, s: &Substitution) -> (Vec<Term>, Term) {
    let mut elems = Vec::new();
    let mut cur = walk(t, s);
    loop {
        match cur {
            Term::Set(c) => {
                elems.extend(c.elems.iter().cloned());
                cur = walk(&c.rest, s);
            }
            other => return (elems, other),
        }
    }
}

/// Where an unbound variable occurs inside a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Occurrence {
    Absent,
    /// Inside a pair or a set element; binding would create a cyclic term.
    InElement,
    /// Only along the chain of set rests; solvable by absorption.
    InSetTail,
}

pub fn occurs(v: Var, t: &Term, s: &Substitution) -> Occurrence {
    match walk(t, s) {
        // `v` against itself is the trivial equation, not an occurrence.
        Term::Var(_) => Occurrence::Absent,
        Term::Set(_) => {
            let (elems, rest) = flatten_set(t, s);
            if elems.iter().any(|e| occurs_anywhere(v, e, s)) {
                Occurrence::InElement
            } else if rest == Term::Var(v) {
                Occurrence::InSetTail
            } else if occurs_anywhere(v, &rest, s) {
                Occurrence::InElement
            } else {
                Occurrence::Absent
            }
        }
        other if occurs_anywhere(v, &other, s) => Occurrence::InElement,
        _ => Occurrence::Absent,
    }
}

fn occurs_anywhere(v: Var, t: &Term, s: &Substitution) -> bool {
    match walk(t, s) {
        Term::Var(w) => w == v,
        Term::Atom(_) | Term::EmptySet => false,
        Term::Pair(p) => occurs_anywhere(v, &p.0, s) || occurs_anywhere(v, &p.1, s),
        Term::Set(c) => {
            c.elems.iter().any(|e| occurs_anywhere(v, e, s)) || occurs_anywhere(v, &c.rest, s)
        }
    }
}

/// Raised when a set's rest walks to something that is neither a set nor a
/// variable.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("ill-formed set: rest is {0}")]
pub struct IllFormedSet(pub Term);

/// Canonical form of a set term: one flattened cell, elements
/// deduplicated syntactically, ground elements sorted by [`term_order`] and
/// non-ground elements after them in first-occurrence order. Nested sets
/// are canonicalized first so that equal ground sets compare equal.
pub fn normalize_set(t: &Term, s: &Substitution) -> Result<Term, IllFormedSet> {
    let (elems, rest) = flatten_set(t, s);
    match rest {
        Term::EmptySet | Term::Var(_) => {}
        other => return Err(IllFormedSet(other)),
    }
    let mut ground = Vec::new();
    let mut open = Vec::new();
    for e in elems {
        let e = canonical(&walk_star(&e, s));
        let bucket = if e.is_ground() {
            &mut ground
        } else {
            &mut open
        };
        if !bucket.contains(&e) {
            bucket.push(e);
        }
    }
    ground.sort_by(term_order);
    ground.extend(open);
    Ok(Term::set_cell(ground, rest))
}

/// Canonicalize every set inside an already fully walked term. Ill-formed
/// sets are left flattened but otherwise untouched.
pub fn canonical(t: &Term) -> Term {
    let empty = Substitution::new();
    match t {
        Term::Pair(p) => Term::cons(canonical(&p.0), canonical(&p.1)),
        Term::Set(_) => normalize_set(t, &empty).unwrap_or_else(|_| walk_star(t, &empty)),
        other => other.clone(),
    }
}

fn rank(t: &Term) -> u8 {
    match t {
        Term::Atom(Atom::Num(_)) => 0,
        Term::Atom(Atom::Sym(_)) => 1,
        Term::Atom(Atom::Bool(_)) => 2,
        Term::Atom(Atom::Nil) => 3,
        Term::Pair(_) => 4,
        Term::EmptySet | Term::Set(_) => 5,
        Term::Var(_) => 6,
    }
}

/// Deterministic total order on terms:
/// numbers < symbols < booleans < nil < pairs < sets < variables.
pub fn term_order(a: &Term, b: &Term) -> Ordering {
    match rank(a).cmp(&rank(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    match (a, b) {
        (Term::Atom(x), Term::Atom(y)) => x.cmp(y),
        (Term::Var(x), Term::Var(y)) => x.cmp(y),
        (Term::Pair(x), Term::Pair(y)) => {
            term_order(&x.0, &y.0).then_with(|| term_order(&x.1, &y.1))
        }
        (Term::EmptySet, Term::EmptySet) => Ordering::Equal,
        (Term::EmptySet, Term::Set(_)) => Ordering::Less,
        (Term::Set(_), Term::EmptySet) => Ordering::Greater,
        (Term::Set(x), Term::Set(y)) => {
            let by_elems = x
                .elems
                .iter()
                .zip(y.elems.iter())
                .map(|(p, q)| term_order(p, q))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or_else(|| x.elems.len().cmp(&y.elems.len()));
            by_elems.then_with(|| term_order(&x.rest, &y.rest))
        }
        _ => unreachable!("ranks matched"),
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Num(n) => write!(f, "{n}"),
            Atom::Sym(s) => f.write_str(s),
            Atom::Bool(true) => f.write_str("#t"),
            Atom::Bool(false) => f.write_str("#f"),
            Atom::Nil => f.write_str("()"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(a) => a.fmt(f),
            Term::Var(v) => write!(f, "_v.{}", v.0),
            Term::EmptySet => f.write_str("#(set)"),
            Term::Set(c) => {
                f.write_str("#(set (")?;
                for (i, e) in c.elems.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    e.fmt(f)?;
                }
                f.write_str(")")?;
                if c.rest != Term::EmptySet {
                    write!(f, " {}", c.rest)?;
                }
                f.write_str(")")
            }
            Term::Pair(p) => {
                write!(f, "({}", p.0)?;
                let mut tail = &p.1;
                loop {
                    match tail {
                        Term::Atom(Atom::Nil) => break,
                        Term::Pair(q) => {
                            write!(f, " {}", q.0)?;
                            tail = &q.1;
                        }
                        other => {
                            write!(f, " . {other}")?;
                            break;
                        }
                    }
                }
                f.write_str(")")
            }
        }
    }
}
