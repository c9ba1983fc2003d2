//! Interactive read-eval-print loop.

use std::io::{BufRead, Write};

use super::compile::{compile_toplevel, Item};
use super::reader::read_all;
use super::runner::{RunOptions, Session};
use crate::reify::render_answers;

/// Read forms from `input` until end of input, evaluating each as it
/// completes. Errors are reported and the loop carries on.
pub fn repl(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    opts: &RunOptions,
    prompt: bool,
) -> i32 {
    let mut session = Session::new();
    let mut pending = String::new();
    loop {
        if prompt {
            let _ = write!(out, "{}", if pending.is_empty() { "> " } else { "  " });
            let _ = out.flush();
        }
        let mut line = String::new();
        match input.read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                break;
            }
        }
        pending.push_str(&line);
        let forms = match read_all(&pending) {
            Ok(forms) => forms,
            Err(e) if e.incomplete => continue,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                pending.clear();
                continue;
            }
        };
        pending.clear();
        for form in &forms {
            match compile_toplevel(form) {
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                }
                Ok(Item::Def(d)) => {
                    if session.define(&d) {
                        let _ = writeln!(err, "warning: redefining `{}`", d.name);
                    }
                }
                Ok(Item::Run(r)) => {
                    let result = session
                        .check(&r.body)
                        .map_err(|e| e.to_string())
                        .and_then(|()| {
                            session
                                .execute(&r, opts)
                                .map_err(|e| format!("{}: {e}", r.pos))
                        });
                    match result {
                        Ok(answers) => {
                            let _ = writeln!(out, "{}", render_answers(&answers));
                        }
                        Err(e) => {
                            let _ = writeln!(err, "error: {e}");
                        }
                    }
                }
            }
        }
    }
    if !pending.trim().is_empty() {
        let _ = writeln!(err, "error: input ended inside a form");
    }
    if prompt {
        let _ = writeln!(out);
    }
    0
}
