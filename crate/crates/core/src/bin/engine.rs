use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use toda_core::io::{run, Command, Params, Request};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Validate,
    Truncate,
    Homology,
    Massey,
    Toda,
    ChainComplex,
    AdamsD,
    Oracle,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Validate => Command::Validate,
            Cmd::Truncate => Command::Truncate,
            Cmd::Homology => Command::Homology,
            Cmd::Massey => Command::Massey,
            Cmd::Toda => Command::Toda,
            Cmd::ChainComplex => Command::ChainComplex,
            Cmd::AdamsD => Command::AdamsD,
            Cmd::Oracle => Command::Oracle,
        }
    }
}

/// Exact higher Toda brackets, Massey products and obstruction classes over
/// truncated chain algebras. Prints a JSON document on stdout.
#[derive(Debug, Parser)]
#[command(name = "engine", version)]
struct Cli {
    command: Cmd,
    /// Algebra document (JSON).
    #[arg(long)]
    algebra: PathBuf,
    /// Morphism sequence document (JSON).
    #[arg(long)]
    sequence: Option<PathBuf>,
    /// Bracket or chain complex order.
    #[arg(long)]
    n: Option<usize>,
    /// Homology or truncation level.
    #[arg(long)]
    k: Option<u32>,
    /// Oracle state budget; overrides ENGINE_BUDGET.
    #[arg(long)]
    budget: Option<u128>,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(doc: &serde_json::Value, out: Option<&PathBuf>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let req = Request {
        params: Params {
            command: cli.command.into(),
            n: cli.n,
            k: cli.k,
            budget: cli.budget,
        },
        algebra: cli.algebra,
        sequence: cli.sequence,
    };
    let (doc, code) = match run(&req) {
        Ok(doc) => (doc, 0u8),
        Err(e) => {
            eprintln!("engine {}: {}", req.params.command, e.message);
            (e.document, e.code as u8)
        }
    };
    if let Err(e) = emit(&doc, cli.out.as_ref()) {
        eprintln!("engine: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
