mod bench;
mod query;
mod report;
mod source;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use txc_core::{GraphError, QueryError};

/// Temporal k-core and (k,X)-core queries.
#[derive(Parser)]
#[command(name = "txc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one query and print the result.
    Query(query::QueryCmd),
    /// Run one query on an engine and on the brute-force oracle and diff them.
    Verify(verify::VerifyCmd),
    /// Time engines over a grid of k and window spans; emits CSV.
    Bench(bench::BenchCmd),
    /// Write a synthetic temporal graph as an edge list.
    Gen(source::GenCmd),
    /// Rewrite an edge list with normalized timestamps.
    Normalize(source::NormalizeCmd),
}

pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: error.into(),
        }
    }

    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_IO,
            error: error.into(),
        }
    }
}

impl From<QueryError> for Failure {
    fn from(e: QueryError) -> Self {
        match e {
            QueryError::Graph(g) => g.into(),
            other => Failure::usage(other),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Io(_) | GraphError::Parse { .. } | GraphError::EmptyInput => {
                Failure::io(e)
            }
            other => Failure::usage(other),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

/// Stdout, or a buffered file when `path` is given.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let f = File::create(p)
                .map_err(|e| Failure::io(anyhow::anyhow!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

pub fn finish(mut out: Box<dyn Write>, output: Option<&PathBuf>) -> CmdResult {
    out.flush().map_err(|e| {
        let target = output.map_or("stdout".to_owned(), |p| p.display().to_string());
        Failure::io(anyhow::Error::new(e).context(format!("writing {target}")))
    })
}

/// Phase-2 worker count from `TXC_THREADS`, default 1.
pub fn threads_from_env() -> Result<usize, Failure> {
    match std::env::var("TXC_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Failure::usage(anyhow::anyhow!(
                "TXC_THREADS must be a positive integer, got `{v}`"
            ))),
        },
    }
}

/// A closed downstream pipe (`txc ... | head`) is not an error.
fn broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>()
            .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(|ce| {
                matches!(ce.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe)
            })
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Query(c) => c.run(),
        Command::Verify(c) => c.run(),
        Command::Bench(c) => c.run(),
        Command::Gen(c) => c.run(),
        Command::Normalize(c) => c.run(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if broken_pipe(&f.error) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("txc: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
