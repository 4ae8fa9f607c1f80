use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::obdd::{
    AcceptanceMode, LevelTransition, ObddProgram, ProgramKind, Shape, Transition, VariableOrder,
};

/// Planar rotation by `theta` on two basis states.
pub fn rotation(theta: f64) -> Transition {
    let (s, c) = theta.sin_cos();
    let r = |x: f64| Complex64::new(x, 0.0);
    Transition::Unitary(DMatrix::from_row_slice(2, 2, &[r(c), r(-s), r(s), r(c)]))
}

/// Width-2 stable quantum ID program for PartialMOD^k_n.
///
/// Each 1 rotates by `π / 2^{k+1}`; zeros do nothing. After `m` ones the
/// amplitude on the initial state is `cos(mπ / 2^{k+1})`, which squares to 1
/// when `m ≡ 0` and to 0 when `m ≡ 2^k (mod 2^{k+1})`.
pub fn build_quantum_partialmod(k: usize, n: usize) -> Result<ObddProgram> {
    if n == 0 || k > 62 {
        return Err(Error::param("need n >= 1 and k <= 62"));
    }
    let theta = PI / (1u64 << (k + 1)) as f64;
    ObddProgram::stable(
        ProgramKind::Quantum,
        VariableOrder::natural(n),
        LevelTransition::new(Transition::identity(Shape::Unitary, 2), rotation(theta)),
        0,
        [0],
    )
}

/// Width-2 stable quantum ID program for NotO_n under nondeterministic
/// acceptance: rotate by `+φ` on 1 and `-φ` on 0 with `φ = π/(n+1)`, accept
/// on the second basis state. Acceptance is `sin²((#₁ - #₀)φ)`, zero exactly
/// when the counts agree.
pub fn build_quantum_nondet_noto(n: usize) -> Result<ObddProgram> {
    if n == 0 {
        return Err(Error::param("need n >= 1"));
    }
    let phi = PI / (n + 1) as f64;
    ObddProgram::stable(
        ProgramKind::Quantum,
        VariableOrder::natural(n),
        LevelTransition::new(rotation(-phi), rotation(phi)),
        0,
        [1],
    )
}

/// Cutoff `2/(n+1)²` separating zero from the smallest nonzero acceptance
/// `sin²(π/(n+1)) >= 4/(n+1)²` of [`build_quantum_nondet_noto`].
pub fn noto_cutoff(n: usize) -> f64 {
    2.0 / ((n + 1) * (n + 1)) as f64
}

pub fn noto_mode(n: usize) -> AcceptanceMode {
    AcceptanceMode::Nondeterministic {
        cutoff: noto_cutoff(n),
    }
}
