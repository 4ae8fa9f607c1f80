//! Nondeterministic programs that guess a prime and compare residues.

use std::collections::HashMap;

use super::primes::{mod_inverse, primes_for_fingerprint, PrimeBasis};
use crate::error::{Error, Result};
use crate::obdd::{LevelTransition, ObddProgram, ProgramKind, Transition, VariableOrder};

fn relation(targets: Vec<Vec<usize>>, width: usize) -> Transition {
    Transition::Relation { targets, width }
}

fn idle(width: usize) -> LevelTransition {
    let t = Transition::identity(crate::obdd::Shape::Relation, width);
    LevelTransition::new(t.clone(), t)
}

/// NOBDD for NotO^k_n.
///
/// The first level branches into one counter per prime of
/// `primes_for_fingerprint(k)`; branch `p` counts ones modulo `p` over the
/// first `k` bits and accepts iff the count differs from `k/2` modulo `p`.
/// Level 0 holds the single source; every later level holds `Σ p` nodes.
pub fn build_nobdd_noto_fingerprint(k: usize, n: usize) -> Result<ObddProgram> {
    if !(k > 1 && k.is_multiple_of(2) && k <= n) {
        return Err(Error::param(format!(
            "NotOk needs even k with 1 < k <= n (k={k}, n={n})"
        )));
    }
    let basis = primes_for_fingerprint(k as u64, false)?;
    let offsets: Vec<usize> = basis
        .primes
        .iter()
        .scan(0usize, |acc, &p| {
            let o = *acc;
            *acc += p as usize;
            Some(o)
        })
        .collect();
    let width = basis.sum() as usize;
    let node = |i: usize, r: usize| offsets[i] + r;
    let branches = || basis.primes.iter().enumerate().map(|(i, &p)| (i, p as usize));

    let mut levels = Vec::with_capacity(n);
    let fan_out = |b: usize| relation(vec![branches().map(|(i, p)| node(i, b % p)).collect()], width);
    levels.push(LevelTransition::new(fan_out(0), fan_out(1)));
    let count = |b: usize| {
        let mut targets = vec![Vec::new(); width];
        for (i, p) in branches() {
            for r in 0..p {
                targets[node(i, r)] = vec![node(i, (r + b) % p)];
            }
        }
        relation(targets, width)
    };
    let counting = LevelTransition::new(count(0), count(1));
    for _ in 1..k {
        levels.push(counting.clone());
    }
    for _ in k..n {
        levels.push(idle(width));
    }
    let accept: Vec<usize> = branches()
        .flat_map(|(i, p)| (0..p).filter(move |&r| r != (k / 2) % p).map(move |r| node(i, r)))
        .collect();
    ObddProgram::new(
        ProgramKind::Nondeterministic,
        VariableOrder::natural(n),
        levels,
        0,
        accept,
        false,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum EqsNode {
    Source,
    /// Branch state after a value bit: residue, |α|, |β|.
    Settled {
        branch: usize,
        residue: u64,
        alpha: usize,
        beta: usize,
    },
    /// Branch state after a marker bit, remembering the marker.
    Marked {
        branch: usize,
        residue: u64,
        alpha: usize,
        beta: usize,
        marker: bool,
    },
    /// Absorbing accept: one of α, β outgrew k/4, so their lengths differ.
    Mismatch,
}

struct Layout {
    nodes: Vec<EqsNode>,
    index: HashMap<EqsNode, usize>,
}

impl Layout {
    fn new(nodes: Vec<EqsNode>) -> Self {
        let index = nodes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Layout { nodes, index }
    }

    fn at(&self, s: EqsNode) -> usize {
        self.index[&s]
    }
}

/// Width bound `Σ p · (k/4 + 1)² · 2` of [`build_nobdd_noteqs_fingerprint`].
pub fn noteqs_width_bound(basis: &PrimeBasis, k: usize) -> usize {
    let side = k / 4 + 1;
    basis.primes.iter().map(|&p| p as usize * side * side * 2).sum()
}

/// Prime basis used by [`build_nobdd_noteqs_fingerprint`]: odd primes with
/// product above `2^{k/4}`.
pub fn noteqs_basis(k: usize) -> Result<PrimeBasis> {
    if k / 4 >= 63 {
        return Err(Error::param("k too large for the fingerprint bound"));
    }
    primes_for_fingerprint(1u64 << (k / 4), true)
}

/// NOBDD for NotEQS^k_n.
///
/// Each branch (one odd prime `p`) tracks `(r, |α|, |β|)` where
/// `r = Σⱼ αⱼ 2^{-j} − Σⱼ βⱼ 2^{-j} (mod p)`. Appending a bit to α or β only
/// needs its position, so the update is local; with equal lengths `L`,
/// `r · 2^L ≡ bin(α) − bin(β)`, so `r = 0` iff the binary values agree mod `p`.
/// A branch accepts iff `r ≠ 0` or the lengths differ. Lengths beyond `k/4`
/// fall into a shared absorbing accept node.
///
/// After `t` pairs only states with `|α| + |β| = t` are reachable, so each
/// level holds just those; the widest level has `Σ p · 2 · (k/4 + 1)` nodes,
/// within [`noteqs_width_bound`].
pub fn build_nobdd_noteqs_fingerprint(k: usize, n: usize) -> Result<ObddProgram> {
    if k < 4 || !k.is_multiple_of(4) || k > n {
        return Err(Error::param(format!(
            "NotEQS needs k divisible by 4 with 4 <= k <= n (k={k}, n={n})"
        )));
    }
    let basis = noteqs_basis(k)?;
    let half = k / 4;
    let inv2: Vec<u64> = basis.primes.iter().map(|&p| mod_inverse(2, p)).collect();
    // weight[i][j] = 2^{-j} mod p_i
    let weight: Vec<Vec<u64>> = basis
        .primes
        .iter()
        .zip(&inv2)
        .map(|(&p, &inv)| {
            let mut w = vec![1u64; half + 1];
            for j in 1..=half {
                w[j] = w[j - 1] * inv % p;
            }
            w
        })
        .collect();

    // settled[t] / marked[t]: layouts after t complete pairs (and a marker).
    let layouts = |marked: bool| -> Vec<Layout> {
        (0..=2 * half)
            .map(|t| {
                let mut nodes = Vec::new();
                for (branch, &p) in basis.primes.iter().enumerate() {
                    for residue in 0..p {
                        for alpha in t.saturating_sub(half)..=t.min(half) {
                            let beta = t - alpha;
                            if marked {
                                for marker in [false, true] {
                                    nodes.push(EqsNode::Marked {
                                        branch,
                                        residue,
                                        alpha,
                                        beta,
                                        marker,
                                    });
                                }
                            } else {
                                nodes.push(EqsNode::Settled {
                                    branch,
                                    residue,
                                    alpha,
                                    beta,
                                });
                            }
                        }
                    }
                }
                if t > half {
                    nodes.push(EqsNode::Mismatch);
                }
                Layout::new(nodes)
            })
            .collect()
    };
    let settled = layouts(false);
    let marked = layouts(true);
    let source = Layout::new(vec![EqsNode::Source]);

    // reading a marker bit: settled[t] -> marked[t] (or source fan-out)
    let read_marker = |from: &Layout, to: &Layout, bit: bool| {
        let targets = from
            .nodes
            .iter()
            .map(|&s| match s {
                EqsNode::Source => (0..basis.primes.len())
                    .map(|branch| {
                        to.at(EqsNode::Marked {
                            branch,
                            residue: 0,
                            alpha: 0,
                            beta: 0,
                            marker: bit,
                        })
                    })
                    .collect(),
                EqsNode::Settled {
                    branch,
                    residue,
                    alpha,
                    beta,
                } => {
                    vec![to.at(EqsNode::Marked {
                        branch,
                        residue,
                        alpha,
                        beta,
                        marker: bit,
                    })]
                }
                EqsNode::Mismatch => vec![to.at(EqsNode::Mismatch)],
                EqsNode::Marked { .. } => unreachable!(),
            })
            .collect();
        relation(targets, to.nodes.len())
    };
    // reading a value bit: marked[t] -> settled[t + 1]
    let read_value = |from: &Layout, to: &Layout, bit: bool| {
        let targets = from
            .nodes
            .iter()
            .map(|&s| match s {
                EqsNode::Marked {
                    branch,
                    residue,
                    alpha,
                    beta,
                    marker,
                } => {
                    let p = basis.primes[branch];
                    let b = bit as u64;
                    let next = if !marker {
                        let a = alpha + 1;
                        (a <= half).then(|| EqsNode::Settled {
                            branch,
                            residue: (residue + b * weight[branch][a]) % p,
                            alpha: a,
                            beta,
                        })
                    } else {
                        let bb = beta + 1;
                        (bb <= half).then(|| EqsNode::Settled {
                            branch,
                            residue: (residue + p - b * weight[branch][bb] % p) % p,
                            alpha,
                            beta: bb,
                        })
                    };
                    vec![to.at(next.unwrap_or(EqsNode::Mismatch))]
                }
                EqsNode::Mismatch => vec![to.at(EqsNode::Mismatch)],
                _ => unreachable!(),
            })
            .collect();
        relation(targets, to.nodes.len())
    };

    let mut levels = Vec::with_capacity(n);
    for t in 0..2 * half {
        let from = if t == 0 { &source } else { &settled[t] };
        levels.push(LevelTransition::new(
            read_marker(from, &marked[t], false),
            read_marker(from, &marked[t], true),
        ));
        levels.push(LevelTransition::new(
            read_value(&marked[t], &settled[t + 1], false),
            read_value(&marked[t], &settled[t + 1], true),
        ));
    }
    let last = &settled[2 * half];
    for _ in k..n {
        levels.push(idle(last.nodes.len()));
    }
    let accept: Vec<usize> = last
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, s)| match s {
            EqsNode::Settled {
                residue, alpha, beta, ..
            } => *residue != 0 || alpha != beta,
            EqsNode::Mismatch => true,
            _ => false,
        })
        .map(|(i, _)| i)
        .collect();
    ObddProgram::new(
        ProgramKind::Nondeterministic,
        VariableOrder::natural(n),
        levels,
        0,
        accept,
        false,
    )
}
