//! The `legendre` command-line tool as a library, so that it can be driven from tests.

pub mod args;
pub mod commands;
pub mod document;
pub mod expectations;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use legendre_core::Error;
use thiserror::Error as ThisError;

use args::{Cli, Command, Format};
use document::ResultDocument;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for bad input, 1 for a failure inside a computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::NotPrime(_)
                | Error::FieldTooLarge { .. }
                | Error::ExtensionFieldExactUnsupported(_)
                | Error::Precondition(_)
                | Error::NotCoprime { .. }
                | Error::BadReduction { .. }
                | Error::WrongCongruence { .. }
                | Error::PoleAtNonPositiveInteger(_)
                | Error::OutsideConvergenceDomain(_)
                | Error::PoleInC(_)
                | Error::UnsupportedFamily(_)
                | Error::Parse(_) => 2,
                _ => 1,
            },
        }
    }
}

fn execute(cli: &Cli) -> Result<ResultDocument, CliError> {
    let started = Instant::now();
    let items = match &cli.command {
        Command::Count(a) => commands::count(a)?,
        Command::Lpoly(a) => commands::lpoly(a)?,
        Command::Charsum { mode } => commands::charsum(mode)?,
        Command::Periods(a) => commands::periods(a)?,
        Command::QmCheck(a) => commands::qm(a)?,
        Command::Verify(a) => commands::verify(a)?,
    };
    let invocation = serde_json::to_value(&cli.command).expect("arguments serialize");
    let mut doc = ResultDocument::new(invocation, items);
    if cli.timing {
        doc.elapsed_ms = Some(started.elapsed().as_millis().try_into().unwrap_or(u64::MAX));
    }
    Ok(doc)
}

/// Parses `args`, runs the command and writes the document to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.map_or(0, usize::from)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return 1;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(doc) => {
            let text = match cli.format {
                Format::Json => doc.to_json() + "\n",
                Format::Table => doc.to_table(),
            };
            let _ = out.write_all(text.as_bytes());
            if doc.summary.all_passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
