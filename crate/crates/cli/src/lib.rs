//! Batch front end: resolve a [`RunConfig`], run one command, and write a CSV
//! table with a JSON manifest next to it.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;

pub use config::{Command, RunConfig};

/// Why a run stopped; each kind has its own exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Validation(String),
    Accuracy(String),
    Verification(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Accuracy(_) => 3,
            Failure::Verification(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Io(_) => "io",
            Failure::Validation(_) => "validation",
            Failure::Accuracy(_) => "accuracy",
            Failure::Verification(_) => "verification",
        }
    }

    pub fn reason(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Validation(m) | Failure::Accuracy(m) | Failure::Verification(m) => m,
        }
    }

    /// The single diagnostic line, `error kind=<kind> reason=<text>`.
    pub fn diagnostic(&self) -> String {
        format!("error kind={} reason={}", self.kind(), self.reason().replace('\n', " "))
    }
}

impl From<fracstable::Error> for Failure {
    fn from(e: fracstable::Error) -> Self {
        match e {
            fracstable::Error::InvalidArgument(m) => Failure::Validation(m),
            fracstable::Error::DegenerateRoots(m) => Failure::Validation(format!("degenerate roots: {m}")),
            other @ fracstable::Error::AccuracyFailure { .. } => Failure::Accuracy(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}
