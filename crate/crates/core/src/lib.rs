//! Width-bounded ordered binary decision diagrams (OBDDs) in four flavours —
//! deterministic, nondeterministic, probabilistic and quantum — together with
//! the function families that separate them, explicit constructions, exact
//! and lower-bound width oracles, and Markov-chain analysis of stable
//! probabilistic programs.

pub mod bits;
pub mod constructions;
pub mod document;
pub mod error;
pub mod functions;
pub mod markov;
pub mod obdd;
pub mod oracles;
pub mod report;

pub use error::{Error, Result};
pub use functions::{FunctionName, FunctionSpec, Outcome, TruthTable};
pub use obdd::{
    AcceptanceMode, LevelTransition, ObddProgram, ProgramKind, Shape, Transition, VariableOrder, Verdict,
    WidthProfile,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/functions.md")]
    mod functions {}
    #[doc = include_str!("../../../book/src/programs.md")]
    mod programs {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/markov.md")]
    mod markov {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
