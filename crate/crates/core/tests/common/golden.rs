//! The corpus programs and their expected output.

use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Duration;

use setkanren::frontend::reader::{read_all, Datum};
use setkanren::frontend::runner::with_big_stack;
use setkanren::frontend::{run_source, RunOptions};

#[derive(Clone, Copy, Debug)]
pub enum Mode {
    /// Byte-identical line.
    Exact,
    /// Same answers in any order.
    Multiset,
    /// The golden answers are a prefix of exactly this many answers.
    Prefix(usize),
}

use Mode::*;

pub const CASES: &[(&str, &[Mode])] = &[
    ("sets", &[Multiset, Exact, Exact, Exact]),
    ("absento", &[Exact, Exact, Exact, Exact, Exact]),
    ("alists", &[Exact]),
    ("paths", &[Exact, Exact, Exact, Exact, Exact]),
    ("free-vars-sets", &[Exact]),
    ("free-vars-lists", &[Prefix(100)]),
    ("interp-freeo", &[Exact]),
    ("interp-lists", &[Prefix(100)]),
];

pub const TIME_LIMIT: Duration = Duration::from_secs(5);

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// The printed answers of one output line.
fn answers(line: &str) -> Vec<String> {
    let forms = read_all(line).unwrap_or_else(|e| panic!("unreadable output `{line}`: {e}"));
    assert_eq!(forms.len(), 1, "one answer list per line: `{line}`");
    match &forms[0].datum {
        Datum::List(items, None) => items.iter().map(|s| s.to_string()).collect(),
        _ => panic!("not an answer list: `{line}`"),
    }
}

fn compare(mode: Mode, got: &str, want: &str) -> Result<(), String> {
    match mode {
        Exact if got == want => Ok(()),
        Exact => Err(format!("expected {want}\n     got {got}")),
        Multiset => {
            let mut g = answers(got);
            let mut w = answers(want);
            g.sort();
            w.sort();
            if g == w {
                Ok(())
            } else {
                Err(format!("expected the answers of {want}\n     got {got}"))
            }
        }
        Prefix(count) => {
            let g = answers(got);
            let w = answers(want);
            if g.len() != count {
                Err(format!("expected {count} answers, got {}", g.len()))
            } else if g[..w.len()] != w[..] {
                Err(format!("expected to start with {want}\n     got {got}"))
            } else {
                Ok(())
            }
        }
    }
}

pub fn run_case(name: &str, modes: &[Mode]) -> Result<(), String> {
    let dir = corpus_dir();
    let src =
        std::fs::read_to_string(dir.join(format!("{name}.skl"))).map_err(|e| e.to_string())?;
    let golden =
        std::fs::read_to_string(dir.join(format!("{name}.golden"))).map_err(|e| e.to_string())?;

    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let result = with_big_stack(move || {
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code = run_source(&src, &RunOptions::default(), &mut out, &mut err);
            (
                code,
                String::from_utf8(out).unwrap(),
                String::from_utf8(err).unwrap(),
            )
        });
        let _ = tx.send(result);
    });
    let (code, out, err) = rx
        .recv_timeout(TIME_LIMIT)
        .map_err(|_| format!("did not finish within {TIME_LIMIT:?}"))?;
    if code != 0 {
        return Err(format!("exit status {code}: {err}"));
    }

    let got: Vec<&str> = out.lines().collect();
    let want: Vec<&str> = golden.lines().collect();
    if got.len() != modes.len() || want.len() != modes.len() {
        return Err(format!(
            "{} queries in the manifest, {} output lines, {} golden lines",
            modes.len(),
            got.len(),
            want.len()
        ));
    }
    for (i, mode) in modes.iter().enumerate() {
        compare(*mode, got[i], want[i]).map_err(|e| format!("query {}: {e}", i + 1))?;
    }
    Ok(())
}
