use std::fmt;

use super::program::ProgramKind;
use crate::error::{Error, Result};

/// Slack used when comparing acceptance probabilities against 0, 1 and 1/2 ± ε.
pub const ACCEPT_TOL: f64 = 1e-6;

/// How acceptance probabilities are read as answers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AcceptanceMode {
    /// Acceptance is exactly 0 or 1 (deterministic programs only).
    Deterministic,
    /// Probability 1 on yes-instances and 0 on no-instances.
    Exact,
    /// At least 1/2 + ε on yes-instances, at most 1/2 - ε on no-instances.
    BoundedError(f64),
    /// Accept iff the acceptance probability exceeds `cutoff`.
    Nondeterministic { cutoff: f64 },
}

impl AcceptanceMode {
    pub fn bounded_error(epsilon: f64) -> Result<Self> {
        let m = AcceptanceMode::BoundedError(epsilon);
        m.check()?;
        Ok(m)
    }

    pub fn nondeterministic(cutoff: f64) -> Result<Self> {
        let m = AcceptanceMode::Nondeterministic { cutoff };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        match *self {
            AcceptanceMode::BoundedError(e) if e.is_nan() || e <= 0.0 || e > 0.5 => {
                Err(Error::param(format!("epsilon {e} outside (0, 1/2]")))
            }
            AcceptanceMode::Nondeterministic { cutoff } if !(0.0..1.0).contains(&cutoff) => {
                Err(Error::param(format!("cutoff {cutoff} outside [0, 1)")))
            }
            _ => Ok(()),
        }
    }

    pub(crate) fn applies_to(&self, kind: ProgramKind) -> bool {
        use ProgramKind::*;
        match self {
            AcceptanceMode::Deterministic => kind == Deterministic,
            AcceptanceMode::Exact | AcceptanceMode::BoundedError(_) => kind != Nondeterministic,
            AcceptanceMode::Nondeterministic { .. } => true,
        }
    }

    /// Whether `p` is an acceptable answer for a yes-instance.
    pub fn accepts_yes(&self, p: f64) -> bool {
        match *self {
            AcceptanceMode::Deterministic => p == 1.0,
            AcceptanceMode::Exact => (p - 1.0).abs() <= ACCEPT_TOL,
            AcceptanceMode::BoundedError(e) => p >= 0.5 + e - ACCEPT_TOL,
            AcceptanceMode::Nondeterministic { cutoff } => p > cutoff,
        }
    }

    /// Whether `p` is an acceptable answer for a no-instance.
    pub fn rejects_no(&self, p: f64) -> bool {
        match *self {
            AcceptanceMode::Deterministic => p == 0.0,
            AcceptanceMode::Exact => p.abs() <= ACCEPT_TOL,
            AcceptanceMode::BoundedError(e) => p <= 0.5 - e + ACCEPT_TOL,
            AcceptanceMode::Nondeterministic { cutoff } => p <= cutoff,
        }
    }
}

impl fmt::Display for AcceptanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcceptanceMode::Deterministic => write!(f, "deterministic"),
            AcceptanceMode::Exact => write!(f, "exact"),
            AcceptanceMode::BoundedError(e) => write!(f, "bounded-error({e})"),
            AcceptanceMode::Nondeterministic { cutoff } => write!(f, "nondeterministic({cutoff})"),
        }
    }
}
