use crate::error::{Error, Result};
use crate::obdd::{LevelTransition, ObddProgram, ProgramKind, Transition, VariableOrder};

/// Stable ID counter of ones modulo `modulus`, accepting the listed residues.
pub fn counter(modulus: usize, n: usize, accept: impl IntoIterator<Item = usize>) -> Result<ObddProgram> {
    if modulus == 0 || n == 0 {
        return Err(Error::param("counter needs modulus >= 1 and n >= 1"));
    }
    let stay = Transition::identity(crate::obdd::Shape::Map, modulus);
    let step = Transition::Map {
        targets: (0..modulus).map(|r| (r + 1) % modulus).collect(),
        width: modulus,
    };
    ObddProgram::stable(
        ProgramKind::Deterministic,
        VariableOrder::natural(n),
        LevelTransition::new(stay, step),
        0,
        accept,
    )
}

/// Deterministic stable ID program of width `2^{k+1}` for PartialMOD: a
/// counter modulo `2^{k+1}` accepting residue 0.
pub fn build_det_partialmod(k: usize, n: usize) -> Result<ObddProgram> {
    if k > 20 {
        return Err(Error::param("k > 20 gives an impractically wide counter"));
    }
    counter(1 << (k + 1), n, [0])
}

/// Deterministic program of width `k` for MOD^k_n.
pub fn build_det_mod(k: usize, n: usize) -> Result<ObddProgram> {
    if !(k > 1 && 2 * k <= n) {
        return Err(Error::param(format!("MOD needs 1 < k <= n/2 (k={k}, n={n})")));
    }
    counter(k, n, [0])
}
