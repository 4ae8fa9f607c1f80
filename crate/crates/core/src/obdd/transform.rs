use std::collections::HashMap;

use nalgebra::DMatrix;

use super::program::{ObddProgram, ProgramKind};
use super::transition::{LevelTransition, Transition};
use crate::error::{Error, Result};

/// Default cap on subset nodes per level in [`ObddProgram::determinize`].
pub const SUBSET_CAP: usize = 1 << 16;

impl ObddProgram {
    /// Subset construction: a deterministic program over the reachable sets
    /// of nodes of this nondeterministic program, accepting the same inputs.
    ///
    /// Fails if any level would need more than `cap` subset nodes.
    pub fn determinize(&self, cap: usize) -> Result<ObddProgram> {
        self.ensure_valid()?;
        if self.kind() != ProgramKind::Nondeterministic {
            return Err(Error::WrongKind {
                expected: "nondeterministic",
                got: self.kind(),
            });
        }
        let mut current: Vec<Vec<usize>> = vec![vec![self.initial()]];
        let mut levels = Vec::with_capacity(self.n());
        for level in self.levels() {
            let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next: Vec<Vec<usize>> = Vec::new();
            let mut maps = [
                Vec::with_capacity(current.len()),
                Vec::with_capacity(current.len()),
            ];
            for subset in &current {
                for (bit, map) in maps.iter_mut().enumerate() {
                    let Transition::Relation { targets, .. } = level.on(bit == 1) else {
                        unreachable!("validated nondeterministic program");
                    };
                    let mut image: Vec<usize> =
                        subset.iter().flat_map(|&s| targets[s].iter().copied()).collect();
                    image.sort_unstable();
                    image.dedup();
                    let id = match index.get(&image) {
                        Some(&id) => id,
                        None => {
                            let id = next.len();
                            if id >= cap {
                                return Err(Error::CapExceeded {
                                    what: "subset nodes per level",
                                    value: id as u64 + 1,
                                    cap: cap as u64,
                                });
                            }
                            index.insert(image.clone(), id);
                            next.push(image);
                            id
                        }
                    };
                    map.push(id);
                }
            }
            let width = next.len();
            let [on0, on1] = maps;
            levels.push(LevelTransition::new(
                Transition::Map { targets: on0, width },
                Transition::Map { targets: on1, width },
            ));
            current = next;
        }
        let accept = current
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|n| self.accept().contains(n)))
            .map(|(i, _)| i);
        ObddProgram::new(
            ProgramKind::Deterministic,
            self.order().clone(),
            levels,
            0,
            accept,
            false,
        )
    }

    /// The per-symbol transition matrix of a stable deterministic or
    /// probabilistic program, as a column-stochastic Markov matrix.
    pub fn stable_symbol_chain(&self, symbol: bool) -> Result<DMatrix<f64>> {
        self.ensure_valid()?;
        if !self.is_stable() {
            return Err(Error::NotStable);
        }
        match self.levels()[0].on(symbol) {
            Transition::Map { targets, width } => Ok(Transition::map_matrix(targets, *width)),
            Transition::Stochastic(m) => Ok(m.clone()),
            _ => Err(Error::WrongKind {
                expected: "deterministic or probabilistic",
                got: self.kind(),
            }),
        }
    }

    /// The same deterministic program with its maps written as 0/1 matrices.
    pub fn lift_to_probabilistic(&self) -> Result<ObddProgram> {
        self.ensure_valid()?;
        if self.kind() != ProgramKind::Deterministic {
            return Err(Error::WrongKind {
                expected: "deterministic",
                got: self.kind(),
            });
        }
        let lift = |t: &Transition| match t {
            Transition::Map { targets, width } => {
                Transition::Stochastic(Transition::map_matrix(targets, *width))
            }
            other => other.clone(),
        };
        let levels = self
            .levels()
            .iter()
            .map(|l| LevelTransition::new(lift(&l.on0), lift(&l.on1)))
            .collect();
        ObddProgram::new(
            ProgramKind::Probabilistic,
            self.order().clone(),
            levels,
            self.initial(),
            self.accept().iter().copied(),
            self.is_stable(),
        )
    }

    /// The same deterministic program viewed as a nondeterministic one.
    pub fn as_nondeterministic(&self) -> Result<ObddProgram> {
        self.ensure_valid()?;
        if self.kind() != ProgramKind::Deterministic {
            return Err(Error::WrongKind {
                expected: "deterministic",
                got: self.kind(),
            });
        }
        let rel = |t: &Transition| match t {
            Transition::Map { targets, width } => Transition::Relation {
                targets: targets.iter().map(|&d| vec![d]).collect(),
                width: *width,
            },
            other => other.clone(),
        };
        let levels = self
            .levels()
            .iter()
            .map(|l| LevelTransition::new(rel(&l.on0), rel(&l.on1)))
            .collect();
        ObddProgram::new(
            ProgramKind::Nondeterministic,
            self.order().clone(),
            levels,
            self.initial(),
            self.accept().iter().copied(),
            self.is_stable(),
        )
    }
}
