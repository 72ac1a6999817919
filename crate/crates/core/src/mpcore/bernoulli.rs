//! Exact Bernoulli numbers via tangent numbers.
//!
//! `T_n` is computed with the in-place integer recurrence of Brent and Harvey
//! (O(n²) additions and small multiplications, no rationals), then
//! `B_2n = (-1)^(n-1) · 2n · T_n / (4^n (4^n - 1))`.

use std::sync::{Arc, Mutex};

use rug::{Float, Integer, Rational};

use crate::error::{domain, resource, Result};
use crate::precision::PrecisionContext;

/// Largest Bernoulli index served.
pub const MAX_BERNOULLI_INDEX: u32 = 10_000;

static TANGENT_CACHE: Mutex<Option<Arc<Vec<Integer>>>> = Mutex::new(None);

/// Tangent numbers `T_0..=T_n` (`T_0 = 0`, `T_1 = 1`, `T_2 = 2`, `T_3 = 16`, ...).
pub fn tangent_numbers(n: usize) -> Arc<Vec<Integer>> {
    let mut guard = TANGENT_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(cached) = guard.as_ref() {
        if cached.len() > n {
            return Arc::clone(cached);
        }
    }
    let grown = guard.as_ref().map_or(0, |c| c.len() * 3 / 2);
    let table = Arc::new(compute_tangent(n.max(grown).max(16)));
    *guard = Some(Arc::clone(&table));
    table
}

fn compute_tangent(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        let prev = Integer::from(&t[k - 1] * (k as u64 - 1));
        t[k] = prev;
    }
    let mut scratch = Integer::new();
    for k in 2..=n {
        for j in k..=n {
            // t[j] = (j-k) t[j-1] + (j-k+2) t[j]
            scratch.assign(&t[j - 1] * (j as u64 - k as u64));
            t[j] *= j as u64 - k as u64 + 2;
            t[j] += &scratch;
        }
    }
    t
}

use rug::Assign;

/// Exact `B_n`, with the convention `B_1 = -1/2`.
pub fn bernoulli_rational(n: u32) -> Result<Rational> {
    match n {
        0 => return Ok(Rational::from(1)),
        1 => return Ok(Rational::from((-1, 2))),
        _ if n % 2 == 1 => return Err(domain!("Bernoulli number B_{n} requested for odd n > 1")),
        _ if n > MAX_BERNOULLI_INDEX => {
            return Err(resource!("Bernoulli index {n} exceeds the cap {MAX_BERNOULLI_INDEX}"))
        }
        _ => {}
    }
    let m = n / 2;
    let t = tangent_numbers(m as usize);
    let mut num = Integer::from(&t[m as usize] * n);
    if m % 2 == 0 {
        num = -num;
    }
    let four_m = Integer::from(1) << (2 * m);
    let den = &four_m * Integer::from(&four_m - 1u32);
    Ok(Rational::from((num, den)))
}

/// `B_n` rounded to the context precision.
pub fn bernoulli(n: u32, ctx: &PrecisionContext) -> Result<Float> {
    Ok(Float::with_val(ctx.bits(), bernoulli_rational(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: `sum_{j=0}^{n} C(n+1, j) B_j = 0` over exact rationals.
    fn bernoulli_by_recurrence(nmax: u32) -> Vec<Rational> {
        let mut b = vec![Rational::from(1)];
        for n in 1..=nmax {
            let mut acc = Rational::new();
            for (j, bj) in b.iter().enumerate() {
                acc += Rational::from(bj * Integer::from(Integer::binomial_u(n + 1, j as u32)));
            }
            b.push(-acc / (n + 1));
        }
        b
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_rational(0).unwrap(), 1);
        assert_eq!(bernoulli_rational(2).unwrap(), Rational::from((1, 6)));
        assert_eq!(bernoulli_rational(12).unwrap(), Rational::from((-691, 2730)));
        let ctx = PrecisionContext::default();
        let b12 = bernoulli(12, &ctx).unwrap().to_f64();
        assert!((b12 + 0.253113553113553).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_standard_recurrence() {
        let oracle = bernoulli_by_recurrence(120);
        for n in (0..=120u32).step_by(2) {
            assert_eq!(bernoulli_rational(n).unwrap(), oracle[n as usize], "B_{n}");
        }
    }

    #[test]
    fn tangent_prefix() {
        let t = tangent_numbers(5);
        let head: Vec<u64> = t[..6].iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(head, vec![0, 1, 2, 16, 272, 7936]);
    }

    #[test]
    fn rejects_odd_and_oversized() {
        assert!(matches!(bernoulli_rational(7), Err(crate::Error::Domain(_))));
        assert!(matches!(bernoulli_rational(MAX_BERNOULLI_INDEX + 2), Err(crate::Error::Resource(_))));
    }
}
