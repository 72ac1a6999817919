//! Möbius function by a linear (smallest-prime-factor) sieve.
//!
//! Every composite `n` is visited exactly once, as `p · m` with `p` the
//! smallest prime factor of `n`, which gives `μ(p·m) = -μ(m)` when `p ∤ m`
//! and `0` otherwise.

use crate::error::{domain, resource, Result};

/// Upper bound on sieve size (one byte per entry).
pub const MAX_MOBIUS_LIMIT: u64 = 1_000_000_000;

/// Marker for "not yet reached" inside the sieve; never visible outside it.
const UNSET: i8 = 2;

#[derive(Clone, Debug)]
pub struct MobiusTable {
    // values[n] = μ(n); index 0 is unused and holds 0
    values: Vec<i8>,
}

pub fn build_mobius(limit: u64) -> Result<MobiusTable> {
    if limit == 0 {
        return Err(domain!("Möbius table limit must be positive"));
    }
    if limit > MAX_MOBIUS_LIMIT {
        return Err(resource!("Möbius table limit {limit} exceeds the cap {MAX_MOBIUS_LIMIT}"));
    }
    let n = limit as usize;
    let mut values = Vec::new();
    values.try_reserve_exact(n + 1).map_err(|_| resource!("cannot allocate a Möbius table of {limit} entries"))?;
    values.resize(n + 1, UNSET);
    values[0] = 0;
    values[1] = 1;
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if values[i] == UNSET {
            values[i] = -1;
            primes.push(i as u32);
        }
        let mu_i = values[i];
        for &p in &primes {
            let m = i * p as usize;
            if m > n {
                break;
            }
            if i % p as usize == 0 {
                values[m] = 0;
                break;
            }
            values[m] = -mu_i;
        }
    }
    Ok(MobiusTable { values })
}

impl MobiusTable {
    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `μ(n)`; panics when `n` is zero or beyond the table.
    pub fn mu(&self, n: u64) -> i8 {
        assert!(n >= 1 && n <= self.limit(), "μ({n}) outside table 1..={}", self.limit());
        self.values[n as usize]
    }

    pub fn get(&self, n: u64) -> Option<i8> {
        if n == 0 {
            return None;
        }
        self.values.get(n as usize).copied()
    }

    /// Raw values, `as_slice()[n] = μ(n)` (entry 0 is 0).
    pub fn as_slice(&self) -> &[i8] {
        &self.values
    }

    /// Squarefree `n ≤ upto` with their (nonzero) `μ(n)`.
    pub fn squarefree(&self, upto: u64) -> impl Iterator<Item = (u64, i8)> + '_ {
        let end = (upto.min(self.limit()) + 1) as usize;
        self.values[..end].iter().enumerate().filter(|(_, &m)| m != 0).map(|(n, &m)| (n as u64, m))
    }

    pub fn ensure_covers(&self, n: u64, what: &str) -> Result<()> {
        if n > self.limit() {
            return Err(domain!("{what} needs Möbius values up to N = {n}, but the table stops at {}", self.limit()));
        }
        Ok(())
    }
}

/// Mertens function `M(n) = Σ_{m ≤ n} μ(m)`.
pub fn mertens_prefix(table: &MobiusTable, n: u64) -> Result<i64> {
    if n == 0 || n > table.limit() {
        return Err(domain!("Mertens prefix at {n} outside table range 1..={}", table.limit()));
    }
    Ok(table.values[1..=n as usize].iter().map(|&m| m as i64).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mu(mut n: u64) -> i8 {
        let mut sign = 1i8;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn named_values() {
        let t = build_mobius(100).unwrap();
        assert_eq!(t.mu(1), 1);
        assert_eq!(t.mu(12), 0);
        assert_eq!(t.mu(30), -1);
        assert_eq!(t.mu(97), -1);
        assert_eq!(t.mu(6), 1);
    }

    #[test]
    fn agrees_with_trial_division() {
        let t = build_mobius(10_000).unwrap();
        for n in 1..=10_000 {
            assert_eq!(t.mu(n), naive_mu(n), "n = {n}");
        }
    }

    #[test]
    fn dirichlet_inverse_of_one() {
        let n = 10_000usize;
        let t = build_mobius(n as u64).unwrap();
        let mut acc = vec![0i32; n + 1];
        for d in 1..=n {
            let m = t.mu(d as u64) as i32;
            if m == 0 {
                continue;
            }
            for k in (d..=n).step_by(d) {
                acc[k] += m;
            }
        }
        assert_eq!(acc[1], 1);
        assert!(acc[2..].iter().all(|&v| v == 0));
    }

    #[test]
    fn mertens_values() {
        let t = build_mobius(1000).unwrap();
        assert_eq!(mertens_prefix(&t, 1).unwrap(), 1);
        assert_eq!(mertens_prefix(&t, 2).unwrap(), 0);
        assert_eq!(mertens_prefix(&t, 100).unwrap(), 1);
        assert_eq!(mertens_prefix(&t, 1000).unwrap(), 2);
        assert!(mertens_prefix(&t, 1001).is_err());
        assert!(mertens_prefix(&t, 0).is_err());
    }

    #[test]
    fn limits() {
        assert!(matches!(build_mobius(0), Err(crate::Error::Domain(_))));
        assert!(matches!(build_mobius(MAX_MOBIUS_LIMIT + 1), Err(crate::Error::Resource(_))));
        let t = build_mobius(1).unwrap();
        assert_eq!(t.limit(), 1);
        assert_eq!(t.squarefree(10).count(), 1);
    }
}
