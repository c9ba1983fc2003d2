use std::io::{self, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use setkanren::frontend::repl::repl;
use setkanren::frontend::runner::with_big_stack;
use setkanren::frontend::{run_file, run_source, RunOptions};

/// A miniKanren with finite sets and association-list constraints.
#[derive(Parser)]
#[command(name = "setkanren", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct Opts {
    /// Stop every query after at most N answers.
    #[arg(long, value_name = "N")]
    max: Option<usize>,
    /// Drop answers that print identically to an earlier one.
    #[arg(long)]
    unique: bool,
    /// Report answer counts and timings on stderr.
    #[arg(long)]
    trace: bool,
}

impl From<Opts> for RunOptions {
    fn from(o: Opts) -> Self {
        RunOptions {
            max_answers: o.max,
            unique: o.unique,
            trace: o.trace,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Load a program and print the answers to each of its queries.
    Run {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Evaluate forms interactively.
    Repl {
        #[command(flatten)]
        opts: Opts,
    },
    /// Evaluate the forms in a string.
    Eval {
        form: String,
        #[command(flatten)]
        opts: Opts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = with_big_stack(move || {
        let mut out = io::stdout().lock();
        let mut err = io::stderr().lock();
        match cli.command {
            Command::Run { file, opts } => run_file(&file, &opts.into(), &mut out, &mut err),
            Command::Eval { form, opts } => run_source(&form, &opts.into(), &mut out, &mut err),
            Command::Repl { opts } => {
                let stdin = io::stdin();
                let prompt = stdin.is_terminal();
                let mut input = stdin.lock();
                repl(&mut input, &mut out, &mut err, &opts.into(), prompt)
            }
        }
    });
    ExitCode::from(code as u8)
}
