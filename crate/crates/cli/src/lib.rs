//! `insideness` command-line tool: dataset generation, solver verification,
//! curve enumeration and the small analytic tables.

mod args;
mod enumerate;
mod gen;
mod tables;
mod verify;

use std::io::Write;

use thiserror::Error;

pub use args::{
    Cli, Command, EnumerateArgs, GenArgs, NetspecArgs, ParityArgs, TruthTableArgs, VerifyArgs,
};
pub use enumerate::cmd_enumerate;
pub use gen::cmd_gen;
pub use tables::{cmd_netspec, cmd_parity, cmd_truth_table};
pub use verify::{cmd_verify, verify_dataset, FailureEntry, StepStats, VerificationReport};

pub const EXIT_OK: u8 = 0;
/// A check ran to completion and found a mismatch.
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Generator(#[from] insideness_core::GeneratorError),
    #[error(transparent)]
    Store(#[from] insideness_core::StoreError),
    #[error(transparent)]
    Solver(#[from] insideness_core::SolverError),
    #[error(transparent)]
    Network(#[from] insideness_core::networks::NetworkError),
    #[error(transparent)]
    Enumeration(#[from] insideness_core::enumeration::EnumerationError),
    #[error(transparent)]
    Oracle(#[from] insideness_core::OracleError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

/// Whether a command's checks passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => EXIT_OK,
            Outcome::Fail => EXIT_CHECK_FAILED,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Verify(a) => cmd_verify(a, out).map(|r| Outcome::from_bool(r.passed())),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::TruthTable(a) => cmd_truth_table(a, out),
        Command::Parity(a) => cmd_parity(a, out),
        Command::Netspec(a) => cmd_netspec(a, out),
    }
}
