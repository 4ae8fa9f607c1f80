//! Fooling sets: prefix/suffix pairs `(σᵢ, γᵢ)` with `f(σᵢγᵢ) = 1` and, for
//! `i ≠ j`, `f(σᵢγⱼ) = 0` or `f(σⱼγᵢ) = 0`. The accepting paths of the
//! pairs must cross level `|σ|` at distinct nodes, in deterministic and
//! nondeterministic programs alike.

use super::{BoundKind, WidthReport};
use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Outcome};
use crate::obdd::VariableOrder;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoolingSet {
    pub level: usize,
    /// Prefixes and suffixes in test order.
    pub pairs: Vec<(Vec<bool>, Vec<bool>)>,
}

impl FoolingSet {
    fn value(&self, f: &FunctionSpec, order: &VariableOrder, sigma: &[bool], gamma: &[bool]) -> Outcome {
        let mut input = vec![false; f.n()];
        for (step, &b) in sigma.iter().chain(gamma).enumerate() {
            input[order.variable_at(step)] = b;
        }
        f.eval(&input)
    }

    /// Checks the defining conditions and returns the implied bound.
    pub fn check(&self, f: &FunctionSpec, order: &VariableOrder) -> Result<WidthReport> {
        let n = f.n();
        if order.len() != n {
            return Err(Error::ArityMismatch {
                function: n,
                program: order.len(),
            });
        }
        for (s, g) in &self.pairs {
            if s.len() != self.level || s.len() + g.len() != n {
                return Err(Error::param("fooling pair has the wrong split"));
            }
        }
        for (i, (si, gi)) in self.pairs.iter().enumerate() {
            if self.value(f, order, si, gi) != Outcome::One {
                return Err(Error::param(format!("pair {i} is not a yes-instance")));
            }
            for (j, (sj, gj)) in self.pairs.iter().enumerate().skip(i + 1) {
                let crossed = [self.value(f, order, si, gj), self.value(f, order, sj, gi)];
                if !crossed.contains(&Outcome::Zero) {
                    return Err(Error::param(format!("pairs {i} and {j} are not fooling")));
                }
            }
        }
        let mut per_level = vec![1; n + 1];
        per_level[self.level] = self.pairs.len().max(1);
        Ok(WidthReport::new(per_level, BoundKind::LowerBound, "fooling set"))
    }
}

/// For EQS^k_n in natural order: `σ` writes a string into α, `γ` writes the
/// same string into β. Size `2^{k/4}` at level `k/2`.
pub fn eqs_fooling_set(k: usize, n: usize) -> Result<FoolingSet> {
    if k < 4 || !k.is_multiple_of(4) || k > n || k / 4 > 16 {
        return Err(Error::param(format!("no EQS fooling set for k={k}, n={n}")));
    }
    let half = k / 4;
    let write = |s: usize, marker: bool| -> Vec<bool> {
        (0..half)
            .flat_map(|i| [marker, s >> (half - 1 - i) & 1 == 1])
            .collect()
    };
    let pairs = (0..1usize << half)
        .map(|s| {
            let mut gamma = write(s, true);
            gamma.resize(n - k / 2, false);
            (write(s, false), gamma)
        })
        .collect();
    Ok(FoolingSet { level: k / 2, pairs })
}

/// For MOD^k_n in natural order: `σᵢ` holds `i` ones, `γᵢ` tops the count up
/// to a multiple of `k`. Size `k` at level `n - k + 1`.
pub fn mod_fooling_set(k: usize, n: usize) -> Result<FoolingSet> {
    if !(k > 1 && 2 * k <= n) {
        return Err(Error::param(format!("no MOD fooling set for k={k}, n={n}")));
    }
    let level = n - k + 1;
    let ones = |count: usize, len: usize| -> Vec<bool> { (0..len).map(|i| i < count).collect() };
    let pairs = (0..k)
        .map(|i| (ones(i, level), ones((k - i) % k, k - 1)))
        .collect();
    Ok(FoolingSet { level, pairs })
}
