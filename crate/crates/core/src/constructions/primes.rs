use crate::error::{Error, Result};

/// The shortest prefix of the primes (optionally skipping 2) whose product
/// exceeds `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeBasis {
    pub primes: Vec<u64>,
    pub bound: u64,
    pub odd_only: bool,
}

impl PrimeBasis {
    pub fn product(&self) -> u128 {
        self.primes.iter().map(|&p| p as u128).product()
    }

    pub fn sum(&self) -> u64 {
        self.primes.iter().sum()
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_for_fingerprint(bound: u64, odd_only: bool) -> Result<PrimeBasis> {
    if bound < 1 {
        return Err(Error::param("fingerprint bound must be at least 1"));
    }
    let start = if odd_only { 3 } else { 2 };
    let mut primes = Vec::new();
    let mut product: u128 = 1;
    for p in (start..).filter(|&p| is_prime(p)) {
        if product > bound as u128 {
            break;
        }
        primes.push(p);
        product *= p as u128;
    }
    Ok(PrimeBasis {
        primes,
        bound,
        odd_only,
    })
}

/// Inverse of `a` modulo `p` (p prime, a not a multiple of p).
pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    t0.rem_euclid(p as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: scan prefixes of an explicit prime list.
    fn brute(bound: u64, odd_only: bool) -> Vec<u64> {
        let all: Vec<u64> = (2..200u64)
            .filter(|n| (2..*n).all(|d| n % d != 0))
            .filter(|&p| !odd_only || p != 2)
            .collect();
        for r in 1..all.len() {
            if all[..r].iter().map(|&p| p as u128).product::<u128>() > bound as u128 {
                return all[..r].to_vec();
            }
        }
        unreachable!()
    }

    #[test]
    fn examples() {
        assert_eq!(primes_for_fingerprint(4, false).unwrap().primes, vec![2, 3]);
        assert_eq!(primes_for_fingerprint(6, false).unwrap().primes, vec![2, 3, 5]);
        assert_eq!(primes_for_fingerprint(4, true).unwrap().primes, vec![3, 5]);
        assert_eq!(primes_for_fingerprint(2, true).unwrap().primes, vec![3]);
        assert!(primes_for_fingerprint(0, false).is_err());
    }

    #[test]
    fn minimal_prefix_matches_brute_force() {
        for bound in 1..5000u64 {
            for odd in [false, true] {
                let b = primes_for_fingerprint(bound, odd).unwrap();
                assert_eq!(b.primes, brute(bound, odd), "bound={bound}");
                assert!(b.product() > bound as u128);
                let without_last: u128 = b.primes[..b.primes.len() - 1]
                    .iter()
                    .map(|&p| p as u128)
                    .product();
                assert!(without_last <= bound as u128);
            }
        }
    }

    #[test]
    fn inverses() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p {
                assert_eq!(a * mod_inverse(a, p) % p, 1);
            }
        }
    }
}
