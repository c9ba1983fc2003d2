//! Loading programs and executing their queries.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use super::compile::{compile_toplevel, GoalTpl, Item, LoadError, RelDef, RunForm};
use super::reader::{read_all, Pos, Sexp};
use crate::reify::{render_answers, Answer};
use crate::search::{Limit, Query, Relations, SearchError};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for unreadable, unparsable or ill-formed programs.
pub const EXIT_LOAD: i32 = 1;
/// Exit status when a query signals a program error while running.
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Upper bound on answers for every query.
    pub max_answers: Option<usize>,
    /// Drop syntactically duplicate answers from every query.
    pub unique: bool,
    /// Report each query's answer count and time on the error stream.
    pub trace: bool,
}

/// Relations defined so far.
#[derive(Clone, Default)]
pub struct Session {
    rels: Relations,
    arities: HashMap<String, usize>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn relations(&self) -> &Relations {
        &self.rels
    }

    /// Define (or redefine) a relation. Returns true if it replaced one.
    pub fn define(&mut self, def: &RelDef) -> bool {
        let body = def.body.clone();
        self.arities.insert(def.name.clone(), def.arity);
        self.rels.define(&def.name, def.arity, move |args| {
            body.instantiate(&Arc::new(args.to_vec()))
        })
    }

    /// Check that every call in `goal` names a known relation with the
    /// right number of arguments.
    pub fn check(&self, goal: &GoalTpl) -> Result<(), LoadError> {
        let mut calls = Vec::new();
        goal.calls(&mut calls);
        for (name, got, pos) in calls {
            match self.arities.get(&*name) {
                None => {
                    return Err(LoadError {
                        pos,
                        msg: format!("unknown relation `{name}`"),
                    })
                }
                Some(&n) if n != got => {
                    return Err(LoadError {
                        pos,
                        msg: format!("`{name}` expects {n} arguments, got {got}"),
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Run a query form, applying `opts` on top of its own limit.
    pub fn execute(&self, run: &RunForm, opts: &RunOptions) -> Result<Vec<Answer>, SearchError> {
        let limit = match (run.limit, opts.max_answers) {
            (Limit::Count(n), Some(m)) => Limit::Count(n.min(m)),
            (Limit::All, Some(m)) => Limit::Count(m),
            (l, None) => l,
        };
        let body = run.body.clone();
        let query = Query::new(run.arity, move |vs| {
            body.instantiate(&Arc::new(vs.to_vec()))
        });
        query.collect(limit, &self.rels, run.unique || opts.unique)
    }
}

/// Everything in a source text, compiled: definitions are installed and
/// checked as a whole, so relations may be used before they are defined.
pub struct Loaded {
    pub session: Session,
    pub queries: Vec<RunForm>,
}

#[derive(Debug, thiserror::Error)]
pub enum ProgramError {
    #[error("{0}")]
    Read(#[from] super::reader::ReadError),
    #[error("{0}")]
    Load(#[from] LoadError),
}

pub fn load(src: &str) -> Result<Loaded, ProgramError> {
    let forms = read_all(src)?;
    load_forms(&forms)
}

fn load_forms(forms: &[Sexp]) -> Result<Loaded, ProgramError> {
    let mut session = Session::new();
    let mut defs = Vec::new();
    let mut queries = Vec::new();
    for f in forms {
        match compile_toplevel(f)? {
            Item::Def(d) => {
                session.define(&d);
                defs.push(d);
            }
            Item::Run(r) => queries.push(r),
        }
    }
    for d in &defs {
        session.check(&d.body)?;
    }
    for q in &queries {
        session.check(&q.body)?;
    }
    Ok(Loaded { session, queries })
}

fn trace_line(err: &mut dyn Write, pos: Pos, count: usize, started: Instant) {
    let _ = writeln!(
        err,
        ";; query at {pos}: {count} answer{} in {:.3}s",
        if count == 1 { "" } else { "s" },
        started.elapsed().as_secs_f64()
    );
}

/// Load `src` and print the answers of each query, one line per query.
/// Returns the process exit status.
pub fn run_source(src: &str, opts: &RunOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let loaded = match load(src) {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_LOAD;
        }
    };
    for q in &loaded.queries {
        let started = Instant::now();
        match loaded.session.execute(q, opts) {
            Ok(answers) => {
                let _ = writeln!(out, "{}", render_answers(&answers));
                let _ = out.flush();
                if opts.trace {
                    trace_line(err, q.pos, answers.len(), started);
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", q.pos);
                return EXIT_RUNTIME;
            }
        }
    }
    EXIT_OK
}

pub fn run_file(path: &Path, opts: &RunOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match std::fs::read_to_string(path) {
        Ok(src) => run_source(&src, opts, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            EXIT_LOAD
        }
    }
}

/// Run `f` on a thread with a stack large enough for deep searches.
pub fn with_big_stack<T, F>(f: F) -> T
where
    T: Send + 'static,
    F: FnOnce() -> T + Send + 'static,
{
    std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(f)
        .expect("spawn search thread")
        .join()
        .unwrap_or_else(|e| std::panic::resume_unwind(e))
}
