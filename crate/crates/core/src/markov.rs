//! Ergodic decomposition of the per-symbol chain of a stable program.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::obdd::MODEL_TOL;

/// Entries above this count as edges of the transition digraph.
pub const EDGE_TOL: f64 = 1e-12;

/// Iteration cap for [`limiting_distribution`].
pub const POWER_ITERATIONS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErgodicClass {
    /// States, ascending.
    pub states: Vec<usize>,
    pub period: usize,
    /// `period` sets; one step maps subset `s` into subset `s + 1 mod period`.
    pub cyclic_subsets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovDecomposition {
    pub transient: Vec<usize>,
    /// Ordered by smallest state.
    pub classes: Vec<ErgodicClass>,
    /// Least common multiple of the class periods.
    pub lcm: u64,
}

fn check_stochastic(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::NotStochastic(format!("shape {}x{}", m.nrows(), m.ncols())));
    }
    for (c, col) in m.column_iter().enumerate() {
        if let Some(r) = col.iter().position(|&x| x < -MODEL_TOL) {
            return Err(Error::NotStochastic(format!("entry ({r}, {c}) is negative")));
        }
        let s = col.sum();
        if (s - 1.0).abs() > MODEL_TOL {
            return Err(Error::NotStochastic(format!("column {c} sums to {s}")));
        }
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Splits the states of a column-stochastic `m` (`m[(to, from)]`) into
/// transient states and ergodic classes (the closed strongly connected
/// components), with each class's period and cyclic subsets.
pub fn classify_states(m: &DMatrix<f64>) -> Result<MarkovDecomposition> {
    check_stochastic(m)?;
    let n = m.nrows();
    let mut g = DiGraph::<(), ()>::with_capacity(n, n);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|from| (0..n).filter(|&to| m[(to, from)] > EDGE_TOL).collect())
        .collect();
    for (from, tos) in succ.iter().enumerate() {
        for &to in tos {
            g.add_edge(nodes[from], nodes[to], ());
        }
    }
    let mut comp = vec![usize::MAX; n];
    let sccs = tarjan_scc(&g);
    for (i, scc) in sccs.iter().enumerate() {
        for v in scc {
            comp[v.index()] = i;
        }
    }
    let mut transient = Vec::new();
    let mut classes = Vec::new();
    for (i, scc) in sccs.iter().enumerate() {
        let mut states: Vec<usize> = scc.iter().map(|v| v.index()).collect();
        states.sort_unstable();
        let closed = states.iter().all(|&s| succ[s].iter().all(|&t| comp[t] == i));
        if closed {
            classes.push(class_structure(states, &succ));
        } else {
            transient.extend(states);
        }
    }
    transient.sort_unstable();
    classes.sort_by_key(|c| c.states[0]);
    let lcm = classes.iter().fold(1u64, |acc, c| lcm(acc, c.period as u64));
    Ok(MarkovDecomposition {
        transient,
        classes,
        lcm,
    })
}

fn class_structure(states: Vec<usize>, succ: &[Vec<usize>]) -> ErgodicClass {
    // BFS levels; the period is the gcd of d(u) + 1 - d(v) over class edges
    let mut depth = vec![usize::MAX; succ.len()];
    depth[states[0]] = 0;
    let mut queue = std::collections::VecDeque::from([states[0]]);
    let mut period = 0u64;
    while let Some(u) = queue.pop_front() {
        for &v in &succ[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    for &u in &states {
        for &v in &succ[u] {
            let diff = (depth[u] as i64 + 1 - depth[v] as i64).unsigned_abs();
            period = gcd(period, diff);
        }
    }
    let period = period.max(1) as usize;
    let mut cyclic_subsets = vec![Vec::new(); period];
    for &s in &states {
        cyclic_subsets[depth[s] % period].push(s);
    }
    ErgodicClass {
        states,
        period,
        cyclic_subsets,
    }
}

/// Outcome of [`period_lcm_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Class `class` has a period divisible by `modulus`, hence at least that many states.
    Pass {
        class: usize,
        period: usize,
        modulus: u64,
    },
    LcmNotMultiple {
        lcm: u64,
        modulus: u64,
    },
    NoClassPeriod {
        lcm: u64,
        modulus: u64,
    },
}

impl Certificate {
    pub fn passed(&self) -> bool {
        matches!(self, Certificate::Pass { .. })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Pass {
                class,
                period,
                modulus,
            } => {
                write!(
                    f,
                    "pass: class {class} has period {period}, a multiple of {modulus}"
                )
            }
            Certificate::LcmNotMultiple { lcm, modulus } => {
                write!(f, "fail: lcm of periods {lcm} is not a multiple of {modulus}")
            }
            Certificate::NoClassPeriod { lcm, modulus } => write!(
                f,
                "fail: lcm {lcm} is a multiple of {modulus} but no single period is"
            ),
        }
    }
}

/// Passes iff the lcm of the class periods and some single period are both
/// multiples of `2^{k+1}` — the cyclic structure a stable program needs to
/// separate one-counts `≡ 0` from `≡ 2^k (mod 2^{k+1})`.
pub fn period_lcm_certificate(dec: &MarkovDecomposition, k: u32) -> Certificate {
    let modulus = 1u64 << (k + 1);
    if !dec.lcm.is_multiple_of(modulus) {
        return Certificate::LcmNotMultiple {
            lcm: dec.lcm,
            modulus,
        };
    }
    match dec
        .classes
        .iter()
        .position(|c| (c.period as u64).is_multiple_of(modulus))
    {
        Some(class) => Certificate::Pass {
            class,
            period: dec.classes[class].period,
            modulus,
        },
        None => Certificate::NoClassPeriod {
            lcm: dec.lcm,
            modulus,
        },
    }
}

/// Stationary distribution of `m` restricted to `states` (an ergodic class
/// of period 1), by power iteration until `‖Mv − v‖∞ ≤ tol`.
///
/// Entries are listed in the order of `states`.
pub fn limiting_distribution(m: &DMatrix<f64>, states: &[usize], tol: f64) -> Result<DVector<f64>> {
    check_stochastic(m)?;
    let not_regular = |reason: &str| Error::NotRegular {
        states: states.to_vec(),
        reason: reason.to_string(),
    };
    if states.is_empty() || states.iter().any(|&s| s >= m.nrows()) {
        return Err(not_regular("states out of range"));
    }
    let sub = DMatrix::from_fn(states.len(), states.len(), |r, c| m[(states[r], states[c])]);
    let dec = classify_states(&sub).map_err(|_| not_regular("the states are not closed"))?;
    match dec.classes.as_slice() {
        [c] if dec.transient.is_empty() && c.period == 1 => {}
        [c] if dec.transient.is_empty() => return Err(not_regular(&format!("period {}", c.period))),
        _ => return Err(not_regular("not a single ergodic class")),
    }
    let w = states.len();
    let mut v = DVector::from_element(w, 1.0 / w as f64);
    for _ in 0..POWER_ITERATIONS {
        let next = &sub * &v;
        let delta = (&next - &v).amax();
        v = next;
        if delta <= tol {
            return Ok(v);
        }
    }
    Err(Error::NoConvergence(POWER_ITERATIONS))
}
