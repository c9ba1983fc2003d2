//! Compiling read forms into goal templates.
//!
//! Variables are resolved lexically at load time to slots in an
//! environment vector; instantiating a template against an environment
//! yields a search [`Goal`].

use std::sync::Arc;

use super::reader::{Datum, Pos, Sexp};
use crate::constraints::Op;
use crate::search::{self, Goal, Limit};
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {msg}")]
pub struct LoadError {
    pub pos: Pos,
    pub msg: String,
}

fn fail<T>(pos: Pos, msg: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Clone, Debug)]
pub enum TermTpl {
    Const(Term),
    Slot(usize),
    Cons(Box<TermTpl>, Box<TermTpl>),
    Set(Vec<TermTpl>, Box<TermTpl>),
}

#[derive(Clone, Debug)]
pub enum GoalTpl {
    Succeed,
    Fail,
    Eq(TermTpl, TermTpl),
    Op(Op, Vec<TermTpl>),
    Call(Arc<str>, Vec<TermTpl>, Pos),
    Conj(Vec<GoalTpl>),
    Disj(Vec<GoalTpl>),
    Fresh(usize, Arc<GoalTpl>),
}

#[derive(Clone, Debug)]
pub struct RelDef {
    pub name: String,
    pub arity: usize,
    pub body: Arc<GoalTpl>,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub struct RunForm {
    pub limit: Limit,
    pub unique: bool,
    pub arity: usize,
    pub body: GoalTpl,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub enum Item {
    Def(RelDef),
    Run(RunForm),
}

/// Goal forms that are not constraints but still cannot be redefined.
const RESERVED: [&str; 7] = ["==", "conde", "fresh", "conj", "disj", "succeed", "fail"];

/// Compile one toplevel form.
pub fn compile_toplevel(form: &Sexp) -> Result<Item, LoadError> {
    let Some(items) = form.list() else {
        return fail(
            form.pos,
            format!("expected a definition or run form, got `{form}`"),
        );
    };
    let head = items.first().and_then(Sexp::sym).unwrap_or("");
    match head {
        "defrel" | "define" => compile_def(form.pos, items).map(Item::Def),
        "run" | "run*" | "run-unique*" => compile_run(form.pos, head, items).map(Item::Run),
        _ => fail(
            form.pos,
            format!("expected a definition or run form, got `{form}`"),
        ),
    }
}

fn names(list: &Sexp, what: &str) -> Result<Vec<String>, LoadError> {
    let Some(items) = list.list() else {
        return fail(list.pos, format!("expected a list of {what}"));
    };
    items
        .iter()
        .map(|s| match s.sym() {
            Some(n) => Ok(n.to_string()),
            None => fail(s.pos, format!("expected a variable name, got `{s}`")),
        })
        .collect()
}

fn compile_def(pos: Pos, items: &[Sexp]) -> Result<RelDef, LoadError> {
    let Some(sig) = items.get(1) else {
        return fail(pos, "definition needs a signature `(name arg ...)`");
    };
    let mut params = names(sig, "a name and parameters")?;
    if params.is_empty() {
        return fail(sig.pos, "definition needs a name");
    }
    let name = params.remove(0);
    if Op::from_name(&name).is_some() || RESERVED.contains(&name.as_str()) {
        return fail(
            sig.pos,
            format!("`{name}` is built in and cannot be redefined"),
        );
    }
    let scope = params;
    let body = compile_goals(&items[2..], &scope)?;
    Ok(RelDef {
        name,
        arity: scope.len(),
        body: Arc::new(body),
        pos,
    })
}

fn compile_run(pos: Pos, head: &str, items: &[Sexp]) -> Result<RunForm, LoadError> {
    let (limit, rest) = if head == "run" {
        let Some(n) = items.get(1) else {
            return fail(pos, "`run` needs an answer count");
        };
        match n.datum {
            Datum::Num(k) if k >= 0 => (Limit::Count(k as usize), &items[2..]),
            _ => {
                return fail(
                    n.pos,
                    format!("answer count must be a natural number, got `{n}`"),
                )
            }
        }
    } else {
        (Limit::All, &items[1..])
    };
    let Some(vars) = rest.first() else {
        return fail(pos, format!("`{head}` needs query variables"));
    };
    let scope = match vars.sym() {
        Some(v) => vec![v.to_string()],
        None => names(vars, "query variables")?,
    };
    if scope.is_empty() {
        return fail(vars.pos, "a query needs at least one variable");
    }
    let body = compile_goals(&rest[1..], &scope)?;
    Ok(RunForm {
        limit,
        unique: head == "run-unique*",
        arity: scope.len(),
        body,
        pos,
    })
}

fn compile_goals(forms: &[Sexp], scope: &[String]) -> Result<GoalTpl, LoadError> {
    let goals = forms
        .iter()
        .map(|g| compile_goal(g, scope))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match goals.len() {
        0 => GoalTpl::Succeed,
        1 => goals.into_iter().next().expect("one goal"),
        _ => GoalTpl::Conj(goals),
    })
}

fn compile_args(
    pos: Pos,
    name: &str,
    args: &[Sexp],
    arity: usize,
    scope: &[String],
) -> Result<Vec<TermTpl>, LoadError> {
    if args.len() != arity {
        return fail(
            pos,
            format!("`{name}` expects {arity} arguments, got {}", args.len()),
        );
    }
    args.iter().map(|a| compile_term(a, scope)).collect()
}

fn compile_goal(form: &Sexp, scope: &[String]) -> Result<GoalTpl, LoadError> {
    match &form.datum {
        Datum::Sym(s) if s == "succeed" => return Ok(GoalTpl::Succeed),
        Datum::Sym(s) if s == "fail" => return Ok(GoalTpl::Fail),
        _ => {}
    }
    let Some((head, args)) = form.list().and_then(|l| l.split_first()) else {
        return fail(form.pos, format!("expected a goal, got `{form}`"));
    };
    let Some(name) = head.sym() else {
        return fail(head.pos, format!("expected a goal name, got `{head}`"));
    };
    if scope.iter().any(|v| v == name) {
        return fail(head.pos, format!("`{name}` is a variable, not a relation"));
    }
    Ok(match name {
        "succeed" | "fail" if args.is_empty() => {
            if name == "succeed" {
                GoalTpl::Succeed
            } else {
                GoalTpl::Fail
            }
        }
        "==" => {
            let mut a = compile_args(form.pos, name, args, 2, scope)?;
            let v = a.pop().expect("two args");
            let u = a.pop().expect("two args");
            GoalTpl::Eq(u, v)
        }
        "conde" => {
            let mut clauses = Vec::new();
            for clause in args {
                let Some(goals) = clause.list() else {
                    return fail(clause.pos, "a conde clause is a list of goals");
                };
                clauses.push(compile_goals(goals, scope)?);
            }
            GoalTpl::Disj(clauses)
        }
        "conj" | "disj" => {
            let goals = args
                .iter()
                .map(|g| compile_goal(g, scope))
                .collect::<Result<Vec<_>, _>>()?;
            if name == "conj" {
                GoalTpl::Conj(goals)
            } else {
                GoalTpl::Disj(goals)
            }
        }
        "fresh" => {
            let Some(vars) = args.first() else {
                return fail(form.pos, "`fresh` needs a variable list");
            };
            let vars = names(vars, "fresh variables")?;
            let mut inner = scope.to_vec();
            inner.extend(vars.iter().cloned());
            let body = compile_goals(&args[1..], &inner)?;
            GoalTpl::Fresh(vars.len(), Arc::new(body))
        }
        _ => match Op::from_name(name) {
            Some(op) => GoalTpl::Op(op, compile_args(form.pos, name, args, op.arity(), scope)?),
            None => {
                let args = args
                    .iter()
                    .map(|a| compile_term(a, scope))
                    .collect::<Result<Vec<_>, _>>()?;
                GoalTpl::Call(Arc::from(name), args, form.pos)
            }
        },
    })
}

/// A term in argument position.
fn compile_term(form: &Sexp, scope: &[String]) -> Result<TermTpl, LoadError> {
    match &form.datum {
        Datum::Sym(s) => match scope.iter().rposition(|v| v == s) {
            Some(i) => Ok(TermTpl::Slot(i)),
            None => fail(form.pos, format!("unbound variable `{s}`")),
        },
        Datum::Num(n) => Ok(TermTpl::Const(Term::num(*n))),
        Datum::Bool(b) => Ok(TermTpl::Const(Term::boolean(*b))),
        Datum::Vector(_) => template(form, scope, false),
        Datum::List(items, None) if items.is_empty() => Ok(TermTpl::Const(Term::nil())),
        Datum::List(items, None) => {
            let head = items[0].sym().filter(|h| !scope.iter().any(|v| v == h));
            match (head, items.len()) {
                (Some("quote"), 2) => template(&items[1], scope, false),
                (Some("quasiquote"), 2) => template(&items[1], scope, true),
                (Some("cons"), 3) => Ok(TermTpl::Cons(
                    Box::new(compile_term(&items[1], scope)?),
                    Box::new(compile_term(&items[2], scope)?),
                )),
                (Some("list"), _) => {
                    let mut acc = TermTpl::Const(Term::nil());
                    for it in items[1..].iter().rev() {
                        acc = TermTpl::Cons(Box::new(compile_term(it, scope)?), Box::new(acc));
                    }
                    Ok(acc)
                }
                _ => fail(form.pos, format!("expected a term, got `{form}`")),
            }
        }
        Datum::List(..) => fail(form.pos, format!("expected a term, got `{form}`")),
    }
}

/// The suffix `items . tail` of a list datum. A suffix of the form
/// `(unquote x)` is how `(a . ,x)` reads, so it splices `x` in as the tail.
fn template_list(
    items: &[Sexp],
    tail: &Option<Box<Sexp>>,
    scope: &[String],
    quasi: bool,
) -> Result<TermTpl, LoadError> {
    match (items, tail) {
        ([], None) => Ok(TermTpl::Const(Term::nil())),
        ([], Some(t)) => template(t, scope, quasi),
        ([u, x], None) if quasi && u.sym() == Some("unquote") => compile_term(x, scope),
        ([head, rest @ ..], _) => Ok(fold_const(TermTpl::Cons(
            Box::new(template(head, scope, quasi)?),
            Box::new(template_list(rest, tail, scope, quasi)?),
        ))),
    }
}

/// A quoted (`quasi == false`) or quasiquoted datum.
fn template(form: &Sexp, scope: &[String], quasi: bool) -> Result<TermTpl, LoadError> {
    match &form.datum {
        Datum::Sym(s) => Ok(TermTpl::Const(Term::sym(s))),
        Datum::Num(n) => Ok(TermTpl::Const(Term::num(*n))),
        Datum::Bool(b) => Ok(TermTpl::Const(Term::boolean(*b))),
        Datum::List(items, tail) => template_list(items, tail, scope, quasi),
        Datum::Vector(items) => {
            if items.first().and_then(Sexp::sym) != Some("set") || items.len() > 3 {
                return fail(form.pos, format!("unsupported vector literal `{form}`"));
            }
            let elems = match items.get(1) {
                None => Vec::new(),
                Some(e) => match e.list() {
                    Some(es) => es
                        .iter()
                        .map(|x| template(x, scope, quasi))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => return fail(e.pos, "set elements must be a list"),
                },
            };
            let rest = match items.get(2) {
                None => TermTpl::Const(Term::EmptySet),
                Some(r) => template(r, scope, quasi)?,
            };
            Ok(fold_const(TermTpl::Set(elems, Box::new(rest))))
        }
    }
}

/// Collapse a template with no variables into a constant.
fn fold_const(t: TermTpl) -> TermTpl {
    match &t {
        TermTpl::Cons(a, b) => match (&**a, &**b) {
            (TermTpl::Const(x), TermTpl::Const(y)) => {
                TermTpl::Const(Term::cons(x.clone(), y.clone()))
            }
            _ => t,
        },
        TermTpl::Set(es, r) => {
            let consts: Option<Vec<Term>> = es
                .iter()
                .map(|e| match e {
                    TermTpl::Const(c) => Some(c.clone()),
                    _ => None,
                })
                .collect();
            match (consts, &**r) {
                (Some(es), TermTpl::Const(r)) => TermTpl::Const(Term::set_cell(es, r.clone())),
                _ => t,
            }
        }
        _ => t,
    }
}

impl TermTpl {
    pub fn instantiate(&self, env: &[Term]) -> Term {
        match self {
            TermTpl::Const(t) => t.clone(),
            TermTpl::Slot(i) => env[*i].clone(),
            TermTpl::Cons(a, b) => Term::cons(a.instantiate(env), b.instantiate(env)),
            TermTpl::Set(es, r) => Term::set_cell(
                es.iter().map(|e| e.instantiate(env)).collect(),
                r.instantiate(env),
            ),
        }
    }
}

impl GoalTpl {
    pub fn instantiate(&self, env: &Arc<Vec<Term>>) -> Goal {
        let args = |ts: &[TermTpl]| ts.iter().map(|t| t.instantiate(env)).collect::<Vec<_>>();
        match self {
            GoalTpl::Succeed => Goal::Succeed,
            GoalTpl::Fail => Goal::Fail,
            GoalTpl::Eq(u, v) => Goal::Eq(u.instantiate(env), v.instantiate(env)),
            GoalTpl::Op(op, ts) => Goal::Constraint(*op, args(ts)),
            GoalTpl::Call(name, ts, _) => Goal::Call(name.clone(), args(ts)),
            GoalTpl::Conj(gs) => search::conj_all(gs.iter().map(|g| g.instantiate(env))),
            GoalTpl::Disj(gs) => search::disj_all(gs.iter().map(|g| g.instantiate(env))),
            GoalTpl::Fresh(n, body) => {
                let env = env.clone();
                let body = body.clone();
                search::fresh(*n, move |vs| {
                    let mut inner = Vec::with_capacity(env.len() + vs.len());
                    inner.extend(env.iter().cloned());
                    inner.extend(vs.iter().cloned());
                    body.instantiate(&Arc::new(inner))
                })
            }
        }
    }

    /// Every relation call in the template, with its position.
    pub fn calls(&self, out: &mut Vec<(Arc<str>, usize, Pos)>) {
        match self {
            GoalTpl::Call(name, args, pos) => out.push((name.clone(), args.len(), *pos)),
            GoalTpl::Conj(gs) | GoalTpl::Disj(gs) => gs.iter().for_each(|g| g.calls(out)),
            GoalTpl::Fresh(_, body) => body.calls(out),
            _ => {}
        }
    }
}
