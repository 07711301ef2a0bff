//! The first `n` primes and a deterministic primality check.

use std::ops::Deref;

use crate::error::{domain, Result};

/// Upper limit on `n` accepted by [`first_n_primes`].
pub const MAX_PRIME_COUNT: usize = 1_000_000;

/// The first `n` primes in increasing order, starting at 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeList(Vec<u64>);

impl PrimeList {
    /// The `i`-th prime, 1-based (`nth(1) = 2`).
    pub fn nth(&self, i: usize) -> Option<u64> {
        i.checked_sub(1).and_then(|j| self.0.get(j).copied())
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

impl Deref for PrimeList {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

/// Sieve of Eratosthenes, doubling the bound until `n` primes are found.
pub fn first_n_primes(n: usize) -> Result<PrimeList> {
    if n == 0 {
        return domain("prime count must be positive");
    }
    if n > MAX_PRIME_COUNT {
        return domain(format!("prime count {n} exceeds {MAX_PRIME_COUNT}"));
    }
    let nf = n as f64;
    let mut bound = if n < 6 {
        15
    } else {
        (nf * (nf.ln() + nf.ln().ln())) as usize + 1
    };
    loop {
        let primes = sieve(bound);
        if primes.len() >= n {
            return Ok(PrimeList(primes.into_iter().take(n).collect()));
        }
        bound *= 2;
    }
}

/// The `n`-th prime, 1-based.
pub fn nth_prime(n: usize) -> Result<u64> {
    Ok(*first_n_primes(n)?.last().expect("n >= 1"))
}

fn sieve(bound: usize) -> Vec<u64> {
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Trial division up to `sqrt(m)`.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lists() {
        assert_eq!(&*first_n_primes(5).unwrap(), &[2, 3, 5, 7, 11]);
        assert_eq!(first_n_primes(8).unwrap().last(), Some(&19));
        assert_eq!(nth_prime(9).unwrap(), 23);
        assert_eq!(first_n_primes(1).unwrap().nth(1), Some(2));
        assert!(first_n_primes(0).is_err());
    }

    #[test]
    fn twenty_first_prime_matches_trial_division() {
        let mut found = Vec::new();
        let mut m = 2;
        while found.len() < 21 {
            if (2..m).all(|d| m % d != 0) {
                found.push(m);
            }
            m += 1;
        }
        assert_eq!(found[20], 73);
        assert_eq!(&*first_n_primes(21).unwrap(), &found[..]);
    }

    #[test]
    fn primality_examples() {
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(is_prime(23));
        assert!(!is_prime(91));
        assert!(is_prime(7919));
        assert!(!is_prime(7917));
    }

    #[test]
    fn list_has_no_gaps() {
        let ps = first_n_primes(2000).unwrap();
        for w in ps.windows(2) {
            assert!(is_prime(w[0]));
            assert!(((w[0] + 1)..w[1]).all(|m| !is_prime(m)));
        }
    }

    #[test]
    fn bertrand_bound_holds() {
        let ps = first_n_primes(10_001).unwrap();
        for w in ps.windows(2) {
            assert!(w[1] < 2 * w[0], "{} {}", w[0], w[1]);
        }
    }
}
