use thiserror::Error;

use crate::obdd::{ProgramKind, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input has length {got}, program expects {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("function has {function} inputs but program reads {program}")]
    ArityMismatch { function: usize, program: usize },

    #[error("invalid program: {0}")]
    InvalidProgram(ValidationReport),

    #[error("{what} exceeds cap ({value} > {cap})")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("acceptance mode `{mode}` does not apply to {kind} programs")]
    ModeMismatch { mode: String, kind: ProgramKind },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("operation requires a stable program")]
    NotStable,

    #[error("operation requires a {expected} program, got {got}")]
    WrongKind {
        expected: &'static str,
        got: ProgramKind,
    },

    #[error("matrix is not column-stochastic: {0}")]
    NotStochastic(String),

    #[error("states {states:?} do not form a regular ergodic class ({reason})")]
    NotRegular { states: Vec<usize>, reason: String },

    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("function {0} is partial; use the partial-function oracle")]
    PartialFunction(String),

    #[error("function {0} is not symmetric")]
    NotSymmetric(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
