use nalgebra::DVector;
use num_complex::Complex64;

use super::program::{ObddProgram, ProgramKind, MODEL_TOL};
use super::transition::Transition;
use crate::error::{Error, Result};

/// Distribution over, or superposition of, the nodes of one level.
#[derive(Clone, Debug, PartialEq)]
pub enum StateVector {
    Probabilities(DVector<f64>),
    Amplitudes(DVector<Complex64>),
}

impl StateVector {
    /// Σ vᵢ for distributions, Σ |zᵢ|² for amplitudes.
    pub fn total(&self) -> f64 {
        match self {
            StateVector::Probabilities(v) => v.iter().sum(),
            StateVector::Amplitudes(z) => z.iter().map(|c| c.norm_sqr()).sum(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        (self.total() - 1.0).abs() <= MODEL_TOL
    }

    pub fn len(&self) -> usize {
        match self {
            StateVector::Probabilities(v) => v.len(),
            StateVector::Amplitudes(z) => z.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl ObddProgram {
    /// Acceptance probability of `input` (`ν₁…νₙ`).
    ///
    /// Deterministic and nondeterministic programs return exactly 0 or 1; a
    /// nondeterministic program accepts iff some path reaches an accepting node.
    pub fn simulate(&self, input: &[bool]) -> Result<f64> {
        self.ensure_valid()?;
        self.check_len(input)?;
        Ok(self.accept_probability(input))
    }

    /// State after every level (`v⁰ … vⁿ`) for probabilistic and quantum programs.
    pub fn trace(&self, input: &[bool]) -> Result<Vec<StateVector>> {
        self.ensure_valid()?;
        self.check_len(input)?;
        match self.kind() {
            ProgramKind::Probabilistic => {
                let mut v = basis_real(self.level_widths()[0], self.initial());
                let mut out = vec![StateVector::Probabilities(v.clone())];
                for (j, level) in self.levels().iter().enumerate() {
                    if let Transition::Stochastic(m) = level.on(self.bit_at(input, j)) {
                        v = m * v;
                    }
                    out.push(StateVector::Probabilities(v.clone()));
                }
                Ok(out)
            }
            ProgramKind::Quantum => {
                let mut z = basis_complex(self.level_widths()[0], self.initial());
                let mut out = vec![StateVector::Amplitudes(z.clone())];
                for (j, level) in self.levels().iter().enumerate() {
                    if let Transition::Unitary(u) = level.on(self.bit_at(input, j)) {
                        z = u * z;
                    }
                    out.push(StateVector::Amplitudes(z.clone()));
                }
                Ok(out)
            }
            kind => Err(Error::WrongKind {
                expected: "probabilistic or quantum",
                got: kind,
            }),
        }
    }

    fn check_len(&self, input: &[bool]) -> Result<()> {
        if input.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: input.len(),
            });
        }
        Ok(())
    }

    #[inline]
    fn bit_at(&self, input: &[bool], step: usize) -> bool {
        input[self.order().variable_at(step)]
    }

    /// Acceptance without validity or length checks; callers guarantee both.
    pub(crate) fn accept_probability(&self, input: &[bool]) -> f64 {
        match self.kind() {
            ProgramKind::Deterministic => {
                let mut node = self.initial();
                for (j, level) in self.levels().iter().enumerate() {
                    if let Transition::Map { targets, .. } = level.on(self.bit_at(input, j)) {
                        node = targets[node];
                    }
                }
                if self.accept().contains(&node) {
                    1.0
                } else {
                    0.0
                }
            }
            ProgramKind::Nondeterministic => {
                let widths = self.level_widths();
                let mut live = vec![false; widths[0]];
                live[self.initial()] = true;
                for (j, level) in self.levels().iter().enumerate() {
                    let mut next = vec![false; widths[j + 1]];
                    if let Transition::Relation { targets, .. } = level.on(self.bit_at(input, j)) {
                        for (src, set) in targets.iter().enumerate() {
                            if live[src] {
                                for &dst in set {
                                    next[dst] = true;
                                }
                            }
                        }
                    }
                    live = next;
                }
                if self.accept().iter().any(|&a| live[a]) {
                    1.0
                } else {
                    0.0
                }
            }
            ProgramKind::Probabilistic => {
                let mut v = basis_real(self.level_widths()[0], self.initial());
                for (j, level) in self.levels().iter().enumerate() {
                    if let Transition::Stochastic(m) = level.on(self.bit_at(input, j)) {
                        v = m * v;
                    }
                }
                self.accept().iter().map(|&a| v[a]).sum::<f64>().clamp(0.0, 1.0)
            }
            ProgramKind::Quantum => {
                let mut z = basis_complex(self.level_widths()[0], self.initial());
                for (j, level) in self.levels().iter().enumerate() {
                    if let Transition::Unitary(u) = level.on(self.bit_at(input, j)) {
                        z = u * z;
                    }
                }
                self.accept()
                    .iter()
                    .map(|&a| z[a].norm_sqr())
                    .sum::<f64>()
                    .clamp(0.0, 1.0)
            }
        }
    }
}

fn basis_real(dim: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(dim);
    v[i] = 1.0;
    v
}

fn basis_complex(dim: usize, i: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(dim);
    v[i] = Complex64::new(1.0, 0.0);
    v
}
