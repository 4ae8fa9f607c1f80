use std::fmt;

use super::mode::AcceptanceMode;
use super::program::ObddProgram;
use crate::bits::{bits_from_mask, format_bits};
use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Outcome};

/// Largest input length checked by full enumeration.
pub const EXHAUSTIVE_CAP: usize = 24;

/// An input on which a program's acceptance contradicts the function.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub input: Vec<bool>,
    pub expected: Outcome,
    pub acceptance: f64,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "input {} should be {} but is accepted with probability {}",
            format_bits(&self.input),
            self.expected,
            self.acceptance
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Yes,
    No(Counterexample),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
}

impl ObddProgram {
    /// Checks every input (in increasing mask order) against `f` under `mode`.
    /// Inputs where `f` is undefined are unconstrained.
    pub fn computes(&self, f: &FunctionSpec, mode: AcceptanceMode) -> Result<Verdict> {
        self.precheck(f, mode)?;
        let n = self.n();
        if n > EXHAUSTIVE_CAP {
            return Err(Error::CapExceeded {
                what: "input length for exhaustive check",
                value: n as u64,
                cap: EXHAUSTIVE_CAP as u64,
            });
        }
        for mask in 0..1u64 << n {
            let input = bits_from_mask(mask, n);
            if let Some(cx) = self.judge(f, mode, input) {
                return Ok(Verdict::No(cx));
            }
        }
        Ok(Verdict::Yes)
    }

    /// Checks two representatives of each one-count class of a symmetric `f`
    /// (ones packed first, ones packed last within the counted window).
    ///
    /// Sound only for programs whose acceptance depends on the input through
    /// the same count, such as stable ID counters and rotations; use
    /// [`ObddProgram::computes`] otherwise.
    pub fn computes_by_count_class(&self, f: &FunctionSpec, mode: AcceptanceMode) -> Result<Verdict> {
        self.precheck(f, mode)?;
        let profile = f
            .count_profile()
            .ok_or_else(|| Error::NotSymmetric(f.to_string()))?;
        let n = self.n();
        let w = profile.window;
        for ones in 0..=w {
            if profile.outcomes[ones] == Outcome::Undefined {
                continue;
            }
            let front: Vec<bool> = (0..n).map(|i| i < ones).collect();
            let back: Vec<bool> = (0..n).map(|i| i < w && i >= w - ones).collect();
            for input in [front, back] {
                if let Some(cx) = self.judge(f, mode, input) {
                    return Ok(Verdict::No(cx));
                }
            }
        }
        Ok(Verdict::Yes)
    }

    fn precheck(&self, f: &FunctionSpec, mode: AcceptanceMode) -> Result<()> {
        mode.check()?;
        self.ensure_valid()?;
        if f.n() != self.n() {
            return Err(Error::ArityMismatch {
                function: f.n(),
                program: self.n(),
            });
        }
        if !mode.applies_to(self.kind()) {
            return Err(Error::ModeMismatch {
                mode: mode.to_string(),
                kind: self.kind(),
            });
        }
        Ok(())
    }

    fn judge(&self, f: &FunctionSpec, mode: AcceptanceMode, input: Vec<bool>) -> Option<Counterexample> {
        let expected = f.eval(&input);
        let p = self.accept_probability(&input);
        let ok = match expected {
            Outcome::One => mode.accepts_yes(p),
            Outcome::Zero => mode.rejects_no(p),
            Outcome::Undefined => true,
        };
        if ok {
            None
        } else {
            Some(Counterexample {
                input,
                expected,
                acceptance: p,
            })
        }
    }
}
