//! Program model: the four OBDD kinds, their validation, execution,
//! width accounting and model-level transformations.

mod mode;
mod order;
mod program;
mod simulate;
mod transform;
mod transition;
mod verify;
mod width;

pub use mode::{AcceptanceMode, ACCEPT_TOL};
pub use order::VariableOrder;
pub use program::{ObddProgram, ProgramKind, ValidationReport, Violation, MODEL_TOL};
pub use simulate::StateVector;
pub use transform::SUBSET_CAP;
pub use transition::{LevelTransition, Shape, Transition};
pub use verify::{Counterexample, Verdict, EXHAUSTIVE_CAP};
pub use width::WidthProfile;

#[cfg(test)]
mod tests;
