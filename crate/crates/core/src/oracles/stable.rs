//! Exhaustive search over stable ID programs of a fixed width.
//!
//! The accepting set is not enumerated: for a fixed transition structure the
//! best choice is forced (deterministic: the final nodes of yes-inputs;
//! nondeterministic: every node no no-input can reach), so only the
//! transitions are searched.

use rayon::prelude::*;

use super::OracleCaps;
use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Outcome};
use crate::obdd::{LevelTransition, ObddProgram, ProgramKind, Transition, VariableOrder};

/// Largest input length the search evaluates.
const MAX_N: usize = 20;

#[derive(Clone, Debug)]
pub struct StableSearch {
    /// A program computing the function, if any exists.
    pub found: Option<ObddProgram>,
    /// Transition structures in the search space.
    pub space: u64,
}

/// Searches all stable ID programs of width `w` and the given kind
/// (deterministic or nondeterministic) with initial node 0 for one that
/// computes `f`; by symmetry the initial node is no restriction.
pub fn stable_exhaustive_search(
    f: &FunctionSpec,
    w: usize,
    kind: ProgramKind,
    caps: &OracleCaps,
) -> Result<StableSearch> {
    if w == 0 {
        return Err(Error::param("width must be positive"));
    }
    let n = f.n();
    if n > MAX_N {
        return Err(Error::CapExceeded {
            what: "input length for stable search",
            value: n as u64,
            cap: MAX_N as u64,
        });
    }
    let space = match kind {
        ProgramKind::Deterministic => (w as u64).checked_pow(2 * w as u32),
        ProgramKind::Nondeterministic => 1u64.checked_shl((2 * w * w) as u32),
        other => {
            return Err(Error::WrongKind {
                expected: "deterministic or nondeterministic",
                got: other,
            })
        }
    };
    let space = match space {
        Some(s) if s <= caps.max_programs => s,
        _ => {
            return Err(Error::CapExceeded {
                what: "stable programs to enumerate",
                value: space.unwrap_or(u64::MAX),
                cap: caps.max_programs,
            })
        }
    };
    let table: Vec<Outcome> = (0..1u64 << n).map(|m| f.eval_mask(m)).collect();
    let found = match kind {
        ProgramKind::Deterministic => (0..space)
            .into_par_iter()
            .find_first(|&idx| {
                let (d0, d1) = det_maps(idx, w);
                det_accept_set(&table, n, &d0, &d1).is_some()
            })
            .map(|idx| {
                let (d0, d1) = det_maps(idx, w);
                let accept = det_accept_set(&table, n, &d0, &d1).unwrap();
                det_program(n, w, d0, d1, accept)
            }),
        _ => (0..space)
            .into_par_iter()
            .find_first(|&idx| {
                let (r0, r1) = relations(idx, w);
                nondet_accept_set(&table, n, w, &r0, &r1).is_some()
            })
            .map(|idx| {
                let (r0, r1) = relations(idx, w);
                let accept = nondet_accept_set(&table, n, w, &r0, &r1).unwrap();
                nondet_program(n, w, r0, r1, accept)
            }),
    };
    Ok(StableSearch {
        found: found.transpose()?,
        space,
    })
}

fn det_maps(mut idx: u64, w: usize) -> (Vec<usize>, Vec<usize>) {
    let mut digits = Vec::with_capacity(2 * w);
    for _ in 0..2 * w {
        digits.push((idx % w as u64) as usize);
        idx /= w as u64;
    }
    let d1 = digits.split_off(w);
    (digits, d1)
}

/// Successor masks of the two relations.
fn relations(idx: u64, w: usize) -> (Vec<u64>, Vec<u64>) {
    let row = |s: usize| (idx >> (s * w)) & ((1 << w) - 1);
    ((0..w).map(row).collect(), (w..2 * w).map(row).collect())
}

/// Final nodes of yes-inputs, provided no no-input ends there.
fn det_accept_set(table: &[Outcome], n: usize, d0: &[usize], d1: &[usize]) -> Option<u64> {
    let (mut yes, mut no) = (0u64, 0u64);
    let mut stack = vec![(0usize, 0usize, 0u64)];
    while let Some((depth, node, mask)) = stack.pop() {
        if depth == n {
            match table[mask as usize] {
                Outcome::One => yes |= 1 << node,
                Outcome::Zero => no |= 1 << node,
                Outcome::Undefined => {}
            }
            if yes & no != 0 {
                return None;
            }
            continue;
        }
        stack.push((depth + 1, d0[node], mask));
        stack.push((depth + 1, d1[node], mask | 1 << depth));
    }
    Some(yes)
}

fn image(set: u64, rel: &[u64]) -> u64 {
    (0..rel.len())
        .filter(|&s| set >> s & 1 == 1)
        .fold(0, |m, s| m | rel[s])
}

/// Nodes unreachable by every no-input, provided each yes-input reaches one.
fn nondet_accept_set(table: &[Outcome], n: usize, w: usize, r0: &[u64], r1: &[u64]) -> Option<u64> {
    let mut reach = Vec::with_capacity(1 << n);
    let mut stack = vec![(0usize, 1u64, 0u64)];
    let mut no_reach = 0u64;
    while let Some((depth, set, mask)) = stack.pop() {
        if depth == n {
            match table[mask as usize] {
                Outcome::One => reach.push(set),
                Outcome::Zero => no_reach |= set,
                Outcome::Undefined => {}
            }
            continue;
        }
        stack.push((depth + 1, image(set, r0), mask));
        stack.push((depth + 1, image(set, r1), mask | 1 << depth));
    }
    let accept = !no_reach & ((1 << w) - 1);
    reach.iter().all(|&s| s & accept != 0).then_some(accept)
}

fn bits(mask: u64, w: usize) -> impl Iterator<Item = usize> {
    (0..w).filter(move |&s| mask >> s & 1 == 1)
}

fn det_program(n: usize, w: usize, d0: Vec<usize>, d1: Vec<usize>, accept: u64) -> Result<ObddProgram> {
    ObddProgram::stable(
        ProgramKind::Deterministic,
        VariableOrder::natural(n),
        LevelTransition::new(
            Transition::Map {
                targets: d0,
                width: w,
            },
            Transition::Map {
                targets: d1,
                width: w,
            },
        ),
        0,
        bits(accept, w),
    )
}

fn nondet_program(n: usize, w: usize, r0: Vec<u64>, r1: Vec<u64>, accept: u64) -> Result<ObddProgram> {
    let rel = |r: Vec<u64>| Transition::Relation {
        targets: r.into_iter().map(|m| bits(m, w).collect()).collect(),
        width: w,
    };
    ObddProgram::stable(
        ProgramKind::Nondeterministic,
        VariableOrder::natural(n),
        LevelTransition::new(rel(r0), rel(r1)),
        0,
        bits(accept, w),
    )
}
