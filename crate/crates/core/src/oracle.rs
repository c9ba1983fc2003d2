//! Brute-force reference semantics over a finite universe of ground values.
//!
//! Values use `BTreeSet` for sets, so equality is extensional by
//! construction. [`holds`] decides each constraint straight from its
//! mathematical definition; [`oracle_solutions`] and [`engine_solutions`]
//! enumerate the ground instances of an argument pattern that each side
//! accepts, for differential testing.

use std::collections::BTreeSet;
use std::fmt;

use crate::constraints::Op;
use crate::state::State;
use crate::term::{Atom, Term};
use crate::unify::unify;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Num(i64),
    Sym(String),
    Nil,
    Pair(Box<Value>, Box<Value>),
    Set(BTreeSet<Value>),
}

impl Value {
    pub fn sym(s: &str) -> Value {
        Value::Sym(s.to_string())
    }

    pub fn pair(a: Value, d: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(d))
    }

    pub fn list(items: impl IntoIterator<Item = Value, IntoIter: DoubleEndedIterator>) -> Value {
        items
            .into_iter()
            .rev()
            .fold(Value::Nil, |acc, x| Value::pair(x, acc))
    }

    pub fn set(items: impl IntoIterator<Item = Value>) -> Value {
        Value::Set(items.into_iter().collect())
    }

    pub fn to_term(&self) -> Term {
        match self {
            Value::Num(n) => Term::num(*n),
            Value::Sym(s) => Term::sym(s),
            Value::Nil => Term::nil(),
            Value::Pair(a, d) => Term::cons(a.to_term(), d.to_term()),
            Value::Set(xs) => Term::set_of(xs.iter().map(Value::to_term).collect()),
        }
    }

    /// The value of a ground term; `None` if it has variables, booleans or
    /// an ill-formed set.
    pub fn from_term(t: &Term) -> Option<Value> {
        Some(match t {
            Term::Atom(Atom::Num(n)) => Value::Num(*n),
            Term::Atom(Atom::Sym(s)) => Value::Sym(s.to_string()),
            Term::Atom(Atom::Nil) => Value::Nil,
            Term::Atom(Atom::Bool(_)) | Term::Var(_) => return None,
            Term::Pair(p) => Value::pair(Value::from_term(&p.0)?, Value::from_term(&p.1)?),
            Term::EmptySet => Value::Set(BTreeSet::new()),
            Term::Set(c) => {
                let Value::Set(mut rest) = Value::from_term(&c.rest)? else {
                    return None;
                };
                for e in &c.elems {
                    rest.insert(Value::from_term(e)?);
                }
                Value::Set(rest)
            }
        })
    }

    fn as_set(&self) -> Option<&BTreeSet<Value>> {
        match self {
            Value::Set(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_term().fmt(f)
    }
}

/// Bounds on the ground values enumerated.
#[derive(Clone, Debug)]
pub struct Universe {
    pub atoms: Vec<Value>,
    pub max_set_size: usize,
    /// Nesting depth of sets; depth 1 sets contain only atoms.
    pub max_depth: usize,
    pub max_list_len: usize,
}

impl Universe {
    /// Atoms {0, 1, a}, sets of at most 3 elements nested at most twice,
    /// lists and association lists of at most 3 entries.
    pub fn standard() -> Universe {
        Universe {
            atoms: vec![Value::Num(0), Value::Num(1), Value::sym("a")],
            max_set_size: 3,
            max_depth: 2,
            max_list_len: 3,
        }
    }

    /// All sets within the bounds, shallowest first.
    pub fn sets(&self) -> Vec<Value> {
        let mut sets: Vec<Value> = Vec::new();
        for _ in 0..self.max_depth {
            let mut elems = self.atoms.clone();
            elems.extend(sets.iter().cloned());
            let next: Vec<Value> = subsets(&elems, self.max_set_size)
                .into_iter()
                .map(Value::Set)
                .collect();
            // Keep shallower sets in their original order.
            for s in next {
                if !sets.contains(&s) {
                    sets.push(s);
                }
            }
        }
        sets
    }

    /// Proper lists of atoms, the empty list included.
    pub fn lists(&self) -> Vec<Value> {
        sequences(&self.atoms, 0, self.max_list_len)
    }

    /// Non-empty association lists from atoms to atoms.
    pub fn alists(&self) -> Vec<Value> {
        let bindings: Vec<Value> = self
            .atoms
            .iter()
            .flat_map(|k| self.atoms.iter().map(|v| Value::pair(k.clone(), v.clone())))
            .collect();
        sequences(&bindings, 1, self.max_list_len)
    }
}

fn subsets(elems: &[Value], max: usize) -> Vec<BTreeSet<Value>> {
    let mut out = vec![BTreeSet::new()];
    for e in elems {
        let grown: Vec<BTreeSet<Value>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut s = s.clone();
                s.insert(e.clone());
                s
            })
            .collect();
        out.extend(grown);
    }
    out
}

fn sequences(items: &[Value], min: usize, max: usize) -> Vec<Value> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Value>> = vec![Vec::new()];
    for len in 0..=max {
        if len >= min {
            out.extend(layer.iter().map(|xs| Value::list(xs.iter().cloned())));
        }
        layer = layer
            .iter()
            .flat_map(|xs| {
                items.iter().map(move |x| {
                    let mut ys = xs.clone();
                    ys.push(x.clone());
                    ys
                })
            })
            .collect();
    }
    out
}

/// Every ground value within the bounds: atoms, sets, lists of atoms and
/// association lists. Duplicate-free.
pub fn enumerate_terms(u: &Universe) -> Vec<Value> {
    let mut out = u.atoms.clone();
    out.extend(u.sets());
    out.extend(u.lists());
    out.extend(u.alists());
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of values [`enumerate_terms`] yields, computed combinatorially.
pub fn expected_count(u: &Universe) -> usize {
    let a = u.atoms.len();
    let mut sets = 0;
    for _ in 0..u.max_depth {
        sets = (0..=u.max_set_size).map(|i| binomial(a + sets, i)).sum();
    }
    let lists: usize = (0..=u.max_list_len).map(|i| a.pow(i as u32)).sum();
    let alists: usize = (1..=u.max_list_len).map(|i| (a * a).pow(i as u32)).sum();
    a + sets + lists + alists
}

fn is_list(v: &Value) -> bool {
    match v {
        Value::Nil => true,
        Value::Pair(_, d) => is_list(d),
        _ => false,
    }
}

fn free(k: &Value, l: &Value) -> bool {
    match l {
        Value::Nil => true,
        Value::Pair(b, r) => match &**b {
            Value::Pair(k0, _) => **k0 != *k && free(k, r),
            _ => false,
        },
        _ => false,
    }
}

fn lookup(k: &Value, l: &Value, v: &Value) -> bool {
    match l {
        Value::Pair(b, r) => match &**b {
            Value::Pair(k0, v0) if **k0 == *k => **v0 == *v,
            Value::Pair(..) => lookup(k, r, v),
            _ => false,
        },
        _ => false,
    }
}

/// Proper subterms: the two halves of a pair, the elements of a set, and
/// their subterms in turn.
fn sub_absent(p: &Value, q: &Value) -> bool {
    let parts: Vec<&Value> = match q {
        Value::Pair(a, d) => vec![a, d],
        Value::Set(xs) => xs.iter().collect(),
        _ => Vec::new(),
    };
    parts.into_iter().all(|c| c != p && sub_absent(p, c))
}

/// Decide the constraint named `name` (a goal name such as `"uniono"` or
/// `"=="`) on ground arguments.
pub fn holds(name: &str, args: &[Value]) -> bool {
    let set = |i: usize| args[i].as_set();
    let sets = |n: usize| -> Option<Vec<&BTreeSet<Value>>> { (0..n).map(set).collect() };
    match name {
        "==" => args[0] == args[1],
        "=/=" => args[0] != args[1],
        "seto" => set(0).is_some(),
        "symbolo" => matches!(args[0], Value::Sym(_)),
        "numbero" => matches!(args[0], Value::Num(_)),
        "listo" => is_list(&args[0]),
        "!ino" => set(1).is_some_and(|s| !s.contains(&args[0])),
        "ino" => set(1).is_some_and(|s| s.contains(&args[0])),
        "disjo" => sets(2).is_some_and(|s| s[0].is_disjoint(s[1])),
        "!disjo" => sets(2).is_some_and(|s| !s[0].is_disjoint(s[1])),
        "uniono" => sets(3).is_some_and(|s| &(s[0] | s[1]) == s[2]),
        "!uniono" => sets(3).is_some_and(|s| &(s[0] | s[1]) != s[2]),
        "union+o" => sets(3).is_some_and(|s| s[0].is_disjoint(s[1]) && &(s[0] | s[1]) == s[2]),
        "subseteqo" => sets(2).is_some_and(|s| s[0].is_subset(s[1])),
        "subseto" => sets(2).is_some_and(|s| s[0].is_subset(s[1]) && s[0] != s[1]),
        "subtracto" => {
            // l - {o} = w, with o ∉ w.
            set(0).zip(set(2)).is_some_and(|(l, w)| {
                let mut rest = l.clone();
                rest.remove(&args[1]);
                &rest == w
            })
        }
        "freeo" => free(&args[0], &args[1]),
        "lookupo" => lookup(&args[0], &args[1], &args[2]),
        "sub-absento" => sub_absent(&args[0], &args[1]),
        "absento" => args[0] != args[1] && sub_absent(&args[0], &args[1]),
        other => panic!("no denotation for `{other}`"),
    }
}

/// An argument pattern: ground values, query variables, and pairs or sets
/// built from them.
#[derive(Clone, Debug)]
pub enum Pat {
    Val(Value),
    Var(usize),
    Cons(Box<Pat>, Box<Pat>),
    /// `{e ... | rest}`.
    Set(Vec<Pat>, Box<Pat>),
}

impl Pat {
    pub fn cons(a: Pat, d: Pat) -> Pat {
        Pat::Cons(Box::new(a), Box::new(d))
    }

    pub fn set(elems: Vec<Pat>, rest: Pat) -> Pat {
        Pat::Set(elems, Box::new(rest))
    }

    /// The ground value for an assignment; `None` when a set pattern's
    /// rest is not a set.
    pub fn instantiate(&self, env: &[Value]) -> Option<Value> {
        Some(match self {
            Pat::Val(v) => v.clone(),
            Pat::Var(i) => env[*i].clone(),
            Pat::Cons(a, d) => Value::pair(a.instantiate(env)?, d.instantiate(env)?),
            Pat::Set(es, r) => {
                let Value::Set(mut s) = r.instantiate(env)? else {
                    return None;
                };
                for e in es {
                    s.insert(e.instantiate(env)?);
                }
                Value::Set(s)
            }
        })
    }

    pub fn to_term(&self, vars: &[Term]) -> Term {
        match self {
            Pat::Val(v) => v.to_term(),
            Pat::Var(i) => vars[*i].clone(),
            Pat::Cons(a, d) => Term::cons(a.to_term(vars), d.to_term(vars)),
            Pat::Set(es, r) => Term::set_cell(
                es.iter().map(|e| e.to_term(vars)).collect(),
                r.to_term(vars),
            ),
        }
    }
}

/// A constraint applied to patterns over `domains.len()` variables, each
/// ranging over its own finite domain.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub args: Vec<Pat>,
    pub domains: Vec<Vec<Value>>,
}

impl Problem {
    fn assignments(&self) -> Vec<Vec<Value>> {
        let mut out: Vec<Vec<Value>> = vec![Vec::new()];
        for d in &self.domains {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    d.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn ground_args(&self, env: &[Value]) -> Option<Vec<Value>> {
        self.args.iter().map(|a| a.instantiate(env)).collect()
    }
}

/// Assignments (within the domains) under which the constraint holds.
/// Assignments that do not build well-formed arguments are skipped.
pub fn oracle_solutions(p: &Problem) -> BTreeSet<Vec<Value>> {
    p.assignments()
        .into_iter()
        .filter(|env| p.ground_args(env).is_some_and(|args| holds(&p.name, &args)))
        .collect()
}

/// The constraint applied by the engine to fresh variables.
pub fn engine_states(p: &Problem) -> (Vec<Term>, Vec<State>) {
    let mut st = State::new();
    let vars = st.fresh_vars(p.domains.len());
    let args: Vec<Term> = p.args.iter().map(|a| a.to_term(&vars)).collect();
    let states = if p.name == "==" {
        unify(&args[0], &args[1], st)
    } else {
        let op =
            Op::from_name(&p.name).unwrap_or_else(|| panic!("unknown constraint `{}`", p.name));
        op.apply(&args, st)
    };
    (vars, states)
}

/// Whether some answer state admits binding `vars` to `env`.
pub fn admits(states: &[State], vars: &[Term], env: &[Value]) -> bool {
    states.iter().any(|st| {
        let mut frontier = vec![st.clone()];
        for (v, x) in vars.iter().zip(env) {
            frontier = frontier
                .into_iter()
                .flat_map(|s| unify(v, &x.to_term(), s))
                .collect();
            if frontier.is_empty() {
                return false;
            }
        }
        true
    })
}

/// Assignments (within the domains) that some engine answer admits.
pub fn engine_solutions(p: &Problem) -> BTreeSet<Vec<Value>> {
    let (vars, states) = engine_states(p);
    p.assignments()
        .into_iter()
        .filter(|env| p.ground_args(env).is_some() && admits(&states, &vars, env))
        .collect()
}
