use std::fmt;

use crate::error::{Error, Result};

/// The order in which a program tests its input bits.
///
/// Stored zero-based: `variable_at(j)` is the index of the bit read at step
/// `j + 1`. Textual forms (documents, CLI) are one-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableOrder {
    perm: Vec<usize>,
}

impl VariableOrder {
    pub fn natural(n: usize) -> Self {
        VariableOrder {
            perm: (0..n).collect(),
        }
    }

    /// Outside-in pairing `(1, n, 2, n-1, …)`; an odd middle bit comes last.
    pub fn pairing(n: usize) -> Self {
        let mut perm = Vec::with_capacity(n);
        for t in 0..n / 2 {
            perm.push(t);
            perm.push(n - 1 - t);
        }
        if n % 2 == 1 {
            perm.push(n / 2);
        }
        VariableOrder { perm }
    }

    /// Builds an order from zero-based indices.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::param("an order needs at least one variable"));
        }
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(Error::param(format!(
                    "{:?} is not a permutation of 1..{n}",
                    perm.iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
            seen[v] = true;
        }
        Ok(VariableOrder { perm })
    }

    pub fn from_one_based(perm: &[usize]) -> Result<Self> {
        if perm.contains(&0) {
            return Err(Error::param("one-based order contains 0"));
        }
        Self::new(perm.iter().map(|v| v - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// True for the identity order (an ID program).
    pub fn is_id(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn variable_at(&self, step: usize) -> usize {
        self.perm[step]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Display for VariableOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_order_alternates_ends() {
        assert_eq!(VariableOrder::pairing(4).one_based(), vec![1, 4, 2, 3]);
        assert_eq!(VariableOrder::pairing(5).one_based(), vec![1, 5, 2, 4, 3]);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(VariableOrder::new(vec![0, 0]).is_err());
        assert!(VariableOrder::new(vec![0, 2]).is_err());
        assert!(VariableOrder::new(vec![]).is_err());
        assert!(VariableOrder::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn identity_flag() {
        assert!(VariableOrder::natural(5).is_id());
        assert!(!VariableOrder::pairing(3).is_id());
        assert!(VariableOrder::pairing(2).is_id());
    }
}
