//! Turning answer states into printable answers.
//!
//! A state is reified by walking the query variables, naming the remaining
//! logic variables `_.0`, `_.1`, ... in order of first appearance, and
//! collecting the suspended constraints that can still affect them. Sets
//! are put in canonical form only after naming, so a reified variable sorts
//! like the symbol it prints as.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::constraints::store::{Constraint, Diseq, TypeKind};
use crate::state::State;
use crate::term::{term_order, Atom, Term, Var};
use crate::unify::{unify_raw, Pending};

/// One reified answer: the value of the query variables and the
/// constraints that remain on it, grouped by annotation token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Answer {
    pub value: Term,
    pub annotations: Vec<Annotation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    pub token: &'static str,
    pub payload: Vec<Term>,
}

/// Annotation tokens in display order.
const TOKENS: [&str; 12] = [
    "=/=",
    "set",
    "sym",
    "num",
    "lst",
    "∉",
    "∥",
    "∪₃",
    "free",
    "lookup",
    "absento",
    "sub-absento",
];

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.annotations.is_empty() {
            return self.value.fmt(f);
        }
        write!(f, "({}", self.value)?;
        for a in &self.annotations {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        f.write_str(self.token)?;
        for p in &self.payload {
            write!(f, " {p}")?;
        }
        f.write_str(")")
    }
}

/// Print a list of answers the way a `run` form returns it.
pub fn render_answers(answers: &[Answer]) -> String {
    let items: Vec<String> = answers.iter().map(Answer::to_string).collect();
    format!("({})", items.join(" "))
}

/// A constraint after walking, before naming.
enum Raw {
    Type(TypeKind, Var),
    /// Disjunction of `(lhs rhs)` pairs.
    Diseq(Vec<(Term, Term)>),
    Other(&'static str, Vec<Term>),
    SubAbsent(Term, Term),
}

impl Raw {
    fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        match self {
            Raw::Type(_, v) => out.push(*v),
            Raw::Diseq(pairs) => {
                for (a, b) in pairs {
                    a.collect_vars(&mut out);
                    b.collect_vars(&mut out);
                }
            }
            Raw::Other(_, ts) => ts.iter().for_each(|t| t.collect_vars(&mut out)),
            Raw::SubAbsent(p, q) => {
                p.collect_vars(&mut out);
                q.collect_vars(&mut out);
            }
        }
        out
    }
}

/// Reify `vars` in `st`. A single query variable reifies to its value; more
/// than one to the list of their values.
pub fn reify(st: &State, vars: &[Term]) -> Answer {
    let value = match vars {
        [v] => st.walk_star(v),
        _ => Term::list(vars.iter().map(|v| st.walk_star(v)).collect::<Vec<_>>()),
    };

    let raws: Vec<Raw> = st
        .store()
        .iter()
        .filter_map(|c| walk_constraint(st, c))
        .collect();

    // Keep the constraints connected to the value through shared variables.
    let mut reachable: HashSet<Var> = value.vars().into_iter().collect();
    let mut kept = vec![false; raws.len()];
    loop {
        let mut grew = false;
        for (i, r) in raws.iter().enumerate() {
            if kept[i] {
                continue;
            }
            let vs = r.vars();
            if vs.iter().any(|v| reachable.contains(v)) {
                kept[i] = true;
                reachable.extend(vs);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    let mut names = Naming::default();
    names.visit(&value);
    let raws: Vec<Raw> = raws
        .into_iter()
        .zip(kept)
        .filter_map(|(r, k)| k.then_some(r))
        .collect();
    for r in &raws {
        for v in r.vars() {
            names.name(v);
        }
    }

    let value = names.apply(&value);
    let mut types: BTreeMap<TypeKind, Vec<Term>> = BTreeMap::new();
    let mut type_of: HashMap<Term, TypeKind> = HashMap::new();
    let mut diseqs: Vec<Vec<(Term, Term)>> = Vec::new();
    let mut others: BTreeMap<&'static str, Vec<Term>> = BTreeMap::new();
    let mut sub_absent: Vec<(Term, Term)> = Vec::new();
    for r in raws {
        match r {
            Raw::Type(k, v) => {
                let t = names.apply(&Term::Var(v));
                type_of.insert(t.clone(), k);
                types.entry(k).or_default().push(t);
            }
            Raw::Diseq(pairs) => {
                let mut pairs: Vec<(Term, Term)> = pairs
                    .iter()
                    .map(|(a, b)| orient(&names, names.apply(a), names.apply(b)))
                    .collect();
                pairs.sort_by(pair_order);
                pairs.dedup();
                if !diseqs.contains(&pairs) {
                    diseqs.push(pairs);
                }
            }
            Raw::Other(tok, ts) => {
                let item = Term::list(ts.iter().map(|t| names.apply(t)).collect::<Vec<_>>());
                others.entry(tok).or_default().push(item);
            }
            Raw::SubAbsent(p, q) => sub_absent.push((names.apply(&p), names.apply(&q))),
        }
    }

    // Show `(absento (p q))` when `p ≠ q` is also known, either stored as a
    // disequality or implied because the two cannot have the same kind.
    let mut absent: Vec<Term> = Vec::new();
    let mut sub: Vec<Term> = Vec::new();
    let mut consumed_types: HashSet<Term> = HashSet::new();
    for (p, q) in sub_absent {
        let item = Term::list(vec![p.clone(), q.clone()]);
        let stored = diseqs.iter().position(|d| {
            d.len() == 1 && ((d[0].0 == p && d[0].1 == q) || (d[0].0 == q && d[0].1 == p))
        });
        if let Some(i) = stored {
            diseqs.remove(i);
            absent.push(item);
        } else if kinds_disjoint(&names, &type_of, &p, &q) {
            // The type that witnessed the difference is folded into the
            // absento annotation.
            if names.is_reified(&q) && type_of.contains_key(&q) {
                consumed_types.insert(q.clone());
            }
            absent.push(item);
        } else {
            sub.push(item);
        }
    }

    let mut groups: HashMap<&'static str, Vec<Term>> = HashMap::new();
    if !diseqs.is_empty() {
        let mut items: Vec<Term> = diseqs
            .into_iter()
            .map(|pairs| {
                Term::list(
                    pairs
                        .into_iter()
                        .map(|(a, b)| Term::list(vec![a, b]))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        items.sort_by(term_order);
        groups.insert("=/=", items);
    }
    for (k, mut vs) in types {
        vs.retain(|v| !consumed_types.contains(v));
        if !vs.is_empty() {
            vs.sort_by(term_order);
            vs.dedup();
            groups.insert(k.token(), vs);
        }
    }
    for (tok, mut items) in others {
        items.sort_by(term_order);
        items.dedup();
        groups.insert(tok, items);
    }
    for (tok, mut items) in [("absento", absent), ("sub-absento", sub)] {
        if !items.is_empty() {
            items.sort_by(term_order);
            items.dedup();
            groups.insert(tok, items);
        }
    }

    let annotations = TOKENS
        .iter()
        .filter_map(|tok| {
            groups.remove(tok).map(|payload| Annotation {
                token: tok,
                payload,
            })
        })
        .collect();
    Answer { value, annotations }
}

fn walk_constraint(st: &State, c: &Constraint) -> Option<Raw> {
    let w = |t: &Term| st.walk_star(t);
    Some(match c {
        Constraint::Type(k, v) => match st.walk(&Term::Var(*v)) {
            Term::Var(x) => Raw::Type(*k, x),
            _ => return None,
        },
        Constraint::Diseq(d) => {
            let (u, v) = match d {
                Diseq::Watched { pairs } => (
                    Term::list(pairs.iter().map(|(x, _)| Term::Var(*x)).collect::<Vec<_>>()),
                    Term::list(pairs.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>()),
                ),
                Diseq::General(u, v) => (u.clone(), v.clone()),
            };
            return diseq_pairs(st, &u, &v).map(Raw::Diseq);
        }
        Constraint::NotMember(e, s) => Raw::Other("∉", vec![w(e), w(s)]),
        Constraint::Disjoint(a, b) => Raw::Other("∥", vec![w(a), w(b)]),
        Constraint::Union(a, b, c) => Raw::Other("∪₃", vec![w(a), w(b), w(c)]),
        Constraint::Free(k, l) => Raw::Other("free", vec![w(k), w(l)]),
        Constraint::Lookup(k, l, v) => Raw::Other("lookup", vec![w(k), w(l), w(v)]),
        Constraint::SubAbsent(p, q) => Raw::SubAbsent(w(p), w(q)),
    })
}

/// The bindings whose conjunction `u ≠ v` forbids, or the walked pair itself
/// when unifying them needs more than plain bindings. `None` when the
/// disequality is already satisfied.
fn diseq_pairs(st: &State, u: &Term, v: &Term) -> Option<Vec<(Term, Term)>> {
    let before = st.store().revision();
    let raw = unify_raw(u, v, Pending::new(st.clone()));
    match raw.as_slice() {
        [] => None,
        [p] if p.st.store().revision() == before && p.st.next_var() == st.next_var() => Some(
            p.bound
                .iter()
                .map(|x| (Term::Var(*x), p.st.walk_star(&Term::Var(*x))))
                .collect(),
        ),
        _ => Some(vec![(st.walk_star(u), st.walk_star(v))]),
    }
}

/// Variables first; between two variables, the earlier name first.
fn orient(names: &Naming, a: Term, b: Term) -> (Term, Term) {
    match (names.is_reified(&a), names.is_reified(&b)) {
        (false, true) => (b, a),
        (true, true) if names.index(&b) < names.index(&a) => (b, a),
        _ => (a, b),
    }
}

fn pair_order(x: &(Term, Term), y: &(Term, Term)) -> std::cmp::Ordering {
    term_order(&x.0, &y.0).then_with(|| term_order(&x.1, &y.1))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Num,
    Sym,
    Bool,
    Nil,
    Pair,
    Set,
}

const ALL_KINDS: [Kind; 6] = [
    Kind::Num,
    Kind::Sym,
    Kind::Bool,
    Kind::Nil,
    Kind::Pair,
    Kind::Set,
];

fn kinds(names: &Naming, type_of: &HashMap<Term, TypeKind>, t: &Term) -> Vec<Kind> {
    if names.is_reified(t) {
        return match type_of.get(t) {
            Some(TypeKind::Set) => vec![Kind::Set],
            Some(TypeKind::Symbol) => vec![Kind::Sym],
            Some(TypeKind::Number) => vec![Kind::Num],
            Some(TypeKind::List) => vec![Kind::Nil, Kind::Pair],
            None => ALL_KINDS.to_vec(),
        };
    }
    vec![match t {
        Term::Atom(Atom::Num(_)) => Kind::Num,
        Term::Atom(Atom::Sym(_)) => Kind::Sym,
        Term::Atom(Atom::Bool(_)) => Kind::Bool,
        Term::Atom(Atom::Nil) => Kind::Nil,
        Term::Pair(_) => Kind::Pair,
        Term::EmptySet | Term::Set(_) => Kind::Set,
        Term::Var(_) => return ALL_KINDS.to_vec(),
    }]
}

fn kinds_disjoint(names: &Naming, type_of: &HashMap<Term, TypeKind>, p: &Term, q: &Term) -> bool {
    let kp = kinds(names, type_of, p);
    let kq = kinds(names, type_of, q);
    !kp.iter().any(|k| kq.contains(k))
}

/// Assigns `_.N` names to variables in order of first sighting.
#[derive(Default)]
struct Naming {
    order: HashMap<Var, usize>,
    by_name: HashMap<Term, usize>,
}

impl Naming {
    fn name(&mut self, v: Var) -> usize {
        let next = self.order.len();
        let n = *self.order.entry(v).or_insert(next);
        self.by_name.entry(Self::symbol(n)).or_insert(n);
        n
    }

    fn symbol(n: usize) -> Term {
        Term::sym(&format!("_.{n}"))
    }

    fn visit(&mut self, t: &Term) {
        for v in t.vars() {
            self.name(v);
        }
    }

    fn is_reified(&self, t: &Term) -> bool {
        self.by_name.contains_key(t)
    }

    fn index(&self, t: &Term) -> usize {
        self.by_name.get(t).copied().unwrap_or(usize::MAX)
    }

    /// Replace variables by their names and canonicalize sets.
    fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => match self.order.get(v) {
                Some(n) => Self::symbol(*n),
                None => t.clone(),
            },
            Term::Pair(p) => Term::cons(self.apply(&p.0), self.apply(&p.1)),
            Term::Set(c) => {
                let mut elems: Vec<Term> = Vec::new();
                for e in &c.elems {
                    let e = self.apply(e);
                    if !elems.contains(&e) {
                        elems.push(e);
                    }
                }
                elems.sort_by(term_order);
                Term::set_cell(elems, self.apply(&c.rest))
            }
            other => other.clone(),
        }
    }
}
