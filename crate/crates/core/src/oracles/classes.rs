//! Prefix classes: prefixes of the same length with identical rows of
//! outcomes over all suffixes, computed by interning child pairs bottom-up.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Outcome};
use crate::obdd::VariableOrder;

/// Class structure of a function under an order.
///
/// Prefixes are numbered with the first tested bit as most significant, so
/// the children of prefix `p` at level `j` are `2p` and `2p + 1`.
#[derive(Clone, Debug)]
pub(crate) struct ClassStructure {
    pub n: usize,
    /// `children[j][c]`: classes reached from class `c` of level `j` on 0 and 1.
    pub children: Vec<Vec<[u32; 2]>>,
    /// Outcome of each class at level `n`.
    pub leaves: Vec<Outcome>,
    /// `pattern[j][c]`: id of the set of suffixes on which class `c` is defined.
    pub pattern: Vec<Vec<u32>>,
}

impl ClassStructure {
    pub fn build(f: &FunctionSpec, order: &VariableOrder, max_n: usize) -> Result<Self> {
        let n = f.n();
        if order.len() != n {
            return Err(Error::ArityMismatch {
                function: n,
                program: order.len(),
            });
        }
        if n > max_n {
            return Err(Error::CapExceeded {
                what: "input length for class enumeration",
                value: n as u64,
                cap: max_n as u64,
            });
        }
        let table = reindexed_table(f, order);

        let mut leaves = Vec::new();
        let mut leaf_ids: HashMap<Outcome, u32> = HashMap::new();
        let bottom: Vec<u32> = table
            .iter()
            .map(|&o| {
                *leaf_ids.entry(o).or_insert_with(|| {
                    leaves.push(o);
                    leaves.len() as u32 - 1
                })
            })
            .collect();
        let bottom_pattern: Vec<u32> = leaves.iter().map(|o| o.is_defined() as u32).collect();

        let mut children = vec![Vec::new(); n + 1];
        let mut pattern = vec![Vec::new(); n + 1];
        children[n] = vec![[0, 0]; leaves.len()];
        pattern[n] = bottom_pattern;
        let mut below = bottom;
        for j in (0..n).rev() {
            let mut ids: HashMap<[u32; 2], u32> = HashMap::new();
            let mut kids = Vec::new();
            let level: Vec<u32> = (0..1usize << j)
                .map(|p| {
                    let key = [below[2 * p], below[2 * p + 1]];
                    *ids.entry(key).or_insert_with(|| {
                        kids.push(key);
                        kids.len() as u32 - 1
                    })
                })
                .collect();
            let below_pattern = &pattern[j + 1];
            let mut pattern_ids: HashMap<[u32; 2], u32> = HashMap::new();
            let pats: Vec<u32> = kids
                .iter()
                .map(|&[a, b]| {
                    let key = [below_pattern[a as usize], below_pattern[b as usize]];
                    let next = pattern_ids.len() as u32;
                    *pattern_ids.entry(key).or_insert(next)
                })
                .collect();
            below = level;
            children[j] = kids;
            pattern[j] = pats;
        }
        Ok(ClassStructure {
            n,
            children,
            leaves,
            pattern,
        })
    }

    pub fn class_count(&self, level: usize) -> usize {
        self.children[level].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.n).map(|j| self.class_count(j)).collect()
    }

    /// Pairwise conflicts as bitmasks: bit `d` of `conflicts[j][c]` is set
    /// when some suffix sends class `c` to 0 and class `d` to 1 or vice versa.
    pub fn conflicts(&self, max_classes: usize) -> Result<Vec<Vec<u64>>> {
        let cap = max_classes.min(64);
        if let Some(big) = self.counts().into_iter().max().filter(|&c| c > cap) {
            return Err(Error::CapExceeded {
                what: "prefix classes per level",
                value: big as u64,
                cap: cap as u64,
            });
        }
        let mut out = vec![Vec::new(); self.n + 1];
        out[self.n] = self
            .leaves
            .iter()
            .map(|a| {
                self.leaves.iter().enumerate().fold(0u64, |m, (d, b)| {
                    let clash = matches!(
                        (a, b),
                        (Outcome::Zero, Outcome::One) | (Outcome::One, Outcome::Zero)
                    );
                    m | (clash as u64) << d
                })
            })
            .collect();
        for j in (0..self.n).rev() {
            let below = &out[j + 1];
            let kids = &self.children[j];
            out[j] = kids
                .iter()
                .map(|&[a0, a1]| {
                    kids.iter().enumerate().fold(0u64, |m, (d, &[b0, b1])| {
                        let clash = below[a0 as usize] >> b0 & 1 == 1 || below[a1 as usize] >> b1 & 1 == 1;
                        m | (clash as u64) << d
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// The one-class leaf ids (for labelling accepting nodes).
    pub fn accepting_leaves(&self) -> u64 {
        self.leaves
            .iter()
            .enumerate()
            .filter(|(_, &o)| o == Outcome::One)
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

/// Outcomes indexed by input written in test order, first tested bit as MSB.
pub(crate) fn reindexed_table(f: &FunctionSpec, order: &VariableOrder) -> Vec<Outcome> {
    let n = f.n();
    (0..1u64 << n)
        .map(|t| {
            let mask = (0..n)
                .filter(|&s| t >> (n - 1 - s) & 1 == 1)
                .fold(0u64, |m, s| m | 1 << order.variable_at(s));
            f.eval_mask(mask)
        })
        .collect()
}
