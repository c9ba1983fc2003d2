//! Goals as first-order trees and complete interleaving search over them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::constraints::Op;
use crate::reify::{reify, Answer};
use crate::state::State;
use crate::term::Term;
use crate::unify::unify;

pub type FreshBody = Arc<dyn Fn(&[Term]) -> Goal + Send + Sync>;

#[derive(Clone)]
pub enum Goal {
    Succeed,
    Fail,
    Eq(Term, Term),
    Conj(Arc<Goal>, Arc<Goal>),
    Disj(Arc<Goal>, Arc<Goal>),
    /// Introduce `n` fresh variables and build the body from them.
    Fresh(usize, FreshBody),
    /// Call a named relation; expanded one level at a time during search.
    Call(Arc<str>, Vec<Term>),
    Constraint(Op, Vec<Term>),
}

impl fmt::Debug for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Goal::Succeed => f.write_str("Succeed"),
            Goal::Fail => f.write_str("Fail"),
            Goal::Eq(a, b) => write!(f, "(== {a} {b})"),
            Goal::Conj(a, b) => write!(f, "(conj {a:?} {b:?})"),
            Goal::Disj(a, b) => write!(f, "(disj {a:?} {b:?})"),
            Goal::Fresh(n, _) => write!(f, "(fresh/{n} ..)"),
            Goal::Call(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
            Goal::Constraint(op, args) => {
                write!(f, "({}", op.name())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

pub fn eq(u: impl Into<Term>, v: impl Into<Term>) -> Goal {
    Goal::Eq(u.into(), v.into())
}

pub fn conj(a: Goal, b: Goal) -> Goal {
    Goal::Conj(Arc::new(a), Arc::new(b))
}

pub fn disj(a: Goal, b: Goal) -> Goal {
    Goal::Disj(Arc::new(a), Arc::new(b))
}

/// Conjunction of any number of goals; empty is `Succeed`.
pub fn conj_all(goals: impl IntoIterator<Item = Goal>) -> Goal {
    let mut goals: Vec<Goal> = goals.into_iter().collect();
    let Some(mut acc) = goals.pop() else {
        return Goal::Succeed;
    };
    while let Some(g) = goals.pop() {
        acc = conj(g, acc);
    }
    acc
}

/// Disjunction of any number of goals; empty is `Fail`.
pub fn disj_all(goals: impl IntoIterator<Item = Goal>) -> Goal {
    let mut goals: Vec<Goal> = goals.into_iter().collect();
    let Some(mut acc) = goals.pop() else {
        return Goal::Fail;
    };
    while let Some(g) = goals.pop() {
        acc = disj(g, acc);
    }
    acc
}

/// `conde`: a disjunction of conjunctive clauses.
pub fn conde(clauses: impl IntoIterator<Item = Vec<Goal>>) -> Goal {
    disj_all(clauses.into_iter().map(conj_all))
}

pub fn fresh<F>(n: usize, body: F) -> Goal
where
    F: Fn(&[Term]) -> Goal + Send + Sync + 'static,
{
    Goal::Fresh(n, Arc::new(body))
}

pub fn call(name: &str, args: Vec<Term>) -> Goal {
    Goal::Call(Arc::from(name), args)
}

pub fn constraint(op: Op, args: Vec<Term>) -> Goal {
    Goal::Constraint(op, args)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{name}` expects {expected} arguments, got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
}

pub type RelationBody = Arc<dyn Fn(&[Term]) -> Goal + Send + Sync>;

#[derive(Clone)]
pub struct Relation {
    pub arity: usize,
    pub body: RelationBody,
}

/// Named relations available to [`Goal::Call`].
#[derive(Clone, Default)]
pub struct Relations {
    table: HashMap<Arc<str>, Relation>,
}

impl Relations {
    pub fn new() -> Self {
        Self::default()
    }

    /// Define or replace a relation. Returns true if it replaced one.
    pub fn define<F>(&mut self, name: &str, arity: usize, body: F) -> bool
    where
        F: Fn(&[Term]) -> Goal + Send + Sync + 'static,
    {
        self.table
            .insert(
                Arc::from(name),
                Relation {
                    arity,
                    body: Arc::new(body),
                },
            )
            .is_some()
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.table.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.table.contains_key(name)
    }

    fn expand(&self, name: &str, args: &[Term]) -> Result<Goal, SearchError> {
        let rel = self
            .get(name)
            .ok_or_else(|| SearchError::UnknownRelation(name.to_string()))?;
        if rel.arity != args.len() {
            return Err(SearchError::Arity {
                name: name.to_string(),
                expected: rel.arity,
                got: args.len(),
            });
        }
        Ok((rel.body)(args))
    }
}

/// Search frontier. `Yield` and `Empty` are mature; everything else needs
/// more steps.
enum Stream {
    Empty,
    Yield(State, Box<Stream>),
    Pause(State, Goal),
    Mplus(Box<Stream>, Box<Stream>),
    Bind(Box<Stream>, Goal),
}

fn from_states(states: Vec<State>) -> Stream {
    states
        .into_iter()
        .rev()
        .fold(Stream::Empty, |acc, st| Stream::Yield(st, Box::new(acc)))
}

fn start(rels: &Relations, st: State, goal: &Goal) -> Result<Stream, SearchError> {
    Ok(match goal {
        Goal::Succeed => Stream::Yield(st, Box::new(Stream::Empty)),
        Goal::Fail => Stream::Empty,
        Goal::Eq(u, v) => from_states(unify(u, v, st)),
        Goal::Constraint(op, args) => from_states(op.apply(args, st)),
        Goal::Disj(a, b) => Stream::Mplus(
            Box::new(Stream::Pause(st.clone(), (**a).clone())),
            Box::new(Stream::Pause(st, (**b).clone())),
        ),
        Goal::Conj(a, b) => {
            let first = start(rels, st, a)?;
            Stream::Bind(Box::new(first), (**b).clone())
        }
        Goal::Fresh(n, body) => {
            let mut st = st;
            let vars = st.fresh_vars(*n);
            start(rels, st, &body(&vars))?
        }
        // Expanding and deferring keeps recursive relations productive.
        Goal::Call(name, args) => Stream::Pause(st, rels.expand(name, args)?),
    })
}

fn step(rels: &Relations, s: Stream) -> Result<Stream, SearchError> {
    Ok(match s {
        Stream::Empty | Stream::Yield(..) => s,
        Stream::Pause(st, g) => start(rels, st, &g)?,
        Stream::Mplus(a, b) => match step(rels, *a)? {
            Stream::Empty => *b,
            Stream::Yield(st, rest) => Stream::Yield(st, Box::new(Stream::Mplus(b, rest))),
            other => Stream::Mplus(b, Box::new(other)),
        },
        Stream::Bind(s, g) => match step(rels, *s)? {
            Stream::Empty => Stream::Empty,
            Stream::Yield(st, rest) => Stream::Mplus(
                Box::new(Stream::Pause(st, g.clone())),
                Box::new(Stream::Bind(rest, g)),
            ),
            other => Stream::Bind(Box::new(other), g),
        },
    })
}

/// Lazily produced answer states for a goal.
pub struct Answers<'r> {
    rels: &'r Relations,
    stream: Option<Stream>,
}

impl<'r> Answers<'r> {
    pub fn new(rels: &'r Relations, st: State, goal: Goal) -> Self {
        Answers {
            rels,
            stream: Some(Stream::Pause(st, goal)),
        }
    }
}

impl Iterator for Answers<'_> {
    type Item = Result<State, SearchError>;

    fn next(&mut self) -> Option<Self::Item> {
        let mut s = self.stream.take()?;
        loop {
            match s {
                Stream::Empty => return None,
                Stream::Yield(st, rest) => {
                    self.stream = Some(*rest);
                    return Some(Ok(st));
                }
                other => match step(self.rels, other) {
                    Ok(next) => s = next,
                    Err(e) => return Some(Err(e)),
                },
            }
        }
    }
}

/// How many answers to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Count(usize),
    All,
}

/// A query: `arity` query variables and a goal built from them.
pub struct Query {
    pub arity: usize,
    pub goal: Goal,
    vars: Vec<Term>,
    st: State,
}

impl Query {
    pub fn new<F>(arity: usize, build: F) -> Query
    where
        F: FnOnce(&[Term]) -> Goal,
    {
        Query::with_state(State::new(), arity, build)
    }

    /// Start from a given state (e.g. one carrying a [`crate::Probe`]).
    pub fn with_state<F>(mut st: State, arity: usize, build: F) -> Query
    where
        F: FnOnce(&[Term]) -> Goal,
    {
        let vars = st.fresh_vars(arity);
        let goal = build(&vars);
        Query {
            arity,
            goal,
            vars,
            st,
        }
    }

    pub fn states<'r>(&self, rels: &'r Relations) -> Answers<'r> {
        Answers::new(rels, self.st.clone(), self.goal.clone())
    }

    /// Reified answers in production order.
    pub fn run(&self, limit: Limit, rels: &Relations) -> Result<Vec<Answer>, SearchError> {
        self.collect(limit, rels, false)
    }

    /// Like [`Query::run`] with [`Limit::All`], dropping answers that are
    /// syntactically identical to an earlier one.
    pub fn run_unique(&self, rels: &Relations) -> Result<Vec<Answer>, SearchError> {
        self.collect(Limit::All, rels, true)
    }

    pub fn collect(
        &self,
        limit: Limit,
        rels: &Relations,
        unique: bool,
    ) -> Result<Vec<Answer>, SearchError> {
        let max = match limit {
            Limit::Count(n) => n,
            Limit::All => usize::MAX,
        };
        let mut out: Vec<Answer> = Vec::new();
        if max == 0 {
            return Ok(out);
        }
        for st in self.states(rels) {
            let answer = reify(&st?, &self.vars);
            if unique && out.contains(&answer) {
                continue;
            }
            out.push(answer);
            if out.len() >= max {
                break;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(answers: &[Answer]) -> String {
        crate::reify::render_answers(answers)
    }

    #[test]
    fn disjunction_yields_both_branches() {
        let q = Query::new(1, |v| disj(eq(v[0].clone(), 1), eq(v[0].clone(), 2)));
        let got = q.run(Limit::All, &Relations::new()).unwrap();
        assert_eq!(show(&got), "(1 2)");
    }

    #[test]
    fn fail_short_circuits_conjunction() {
        let q = Query::new(1, |v| conj(Goal::Fail, eq(v[0].clone(), 1)));
        assert!(q.run(Limit::All, &Relations::new()).unwrap().is_empty());
    }

    #[test]
    fn run_zero_is_empty() {
        let q = Query::new(1, |_| Goal::Succeed);
        assert!(q
            .run(Limit::Count(0), &Relations::new())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn fresh_numbers_from_next_var() {
        let q = Query::new(1, |_| Goal::Succeed);
        let g = fresh(2, |v| eq(v[0].clone(), v[1].clone()));
        let rels = Relations::new();
        let st = q.states(&rels).next().unwrap().unwrap();
        assert_eq!(st.next_var(), 1);
        let mut it = Answers::new(&rels, st, g).map(|s| s.unwrap());
        let after = it.next().unwrap();
        assert_eq!(after.next_var(), 3);
    }

    #[test]
    fn diverging_left_branch_does_not_starve_the_right() {
        let mut rels = Relations::new();
        rels.define("loopo", 0, |_| call("loopo", vec![]));
        let q = Query::new(1, |v| disj(call("loopo", vec![]), eq(v[0].clone(), 7)));
        assert_eq!(show(&q.run(Limit::Count(1), &rels).unwrap()), "(7)");
    }

    #[test]
    fn unknown_relation_is_an_error() {
        let q = Query::new(1, |_| call("nope", vec![]));
        assert_eq!(
            q.run(Limit::All, &Relations::new()),
            Err(SearchError::UnknownRelation("nope".into()))
        );
    }
}
