//! Möbius tail moments `T_m(N) = Σ_{n>N} μ(n) n^(-2m)`.
//!
//! Every Möbius-weighted evaluator in the crate truncates at some `N` and
//! recovers the discarded tail by expanding its smooth factor in powers of
//! `n^-2`: `(1 - 1/n²)^k`, `e^(-x/n²)` and `1/(2n² - 1)` all reduce to linear
//! combinations of `T_m`. The moments themselves come from
//! `T_m = 1/ζ(2m) - Σ_{n≤N} μ(n) n^(-2m)`, which is a cancellation of two
//! numbers close to 1 down to roughly `N^(1-2m)`; callers must pass enough
//! precision to leave the required absolute accuracy after that loss.

use rug::{Assign, Float};

use super::ZetaEvenTable;
use crate::error::{resource, Result};
use crate::sieve::MobiusTable;

#[derive(Clone, Debug)]
pub struct MobiusTail {
    cutoff: u64,
    // moments[m] = T_m for 1 ≤ m ≤ max_order; moments[0] unused
    moments: Vec<Float>,
}

impl MobiusTail {
    pub fn new(table: &MobiusTable, cutoff: u64, max_order: u32, prec: u32) -> Result<Self> {
        Ok(Self::grid(table, &[cutoff], max_order, prec)?.pop().expect("one cutoff"))
    }

    /// Tails for several cutoffs (ascending) from a single pass over `μ`.
    pub fn grid(table: &MobiusTable, cutoffs: &[u64], max_order: u32, prec: u32) -> Result<Vec<Self>> {
        assert!(cutoffs.windows(2).all(|w| w[0] < w[1]), "cutoffs must be strictly ascending");
        let max_order = max_order.max(1);
        let last = *cutoffs.last().expect("at least one cutoff");
        table.ensure_covers(last, "Möbius tail correction")?;
        let zeta = ZetaEvenTable::new(max_order, prec)?;

        let mut prefix: Vec<Float> = (0..=max_order).map(|_| Float::new(prec)).collect();
        let mut out = Vec::with_capacity(cutoffs.len());
        let mut next = cutoffs.iter().peekable();
        let mut pw = Float::new(prec);
        let mut inv_sq = Float::new(prec);
        let mu = table.as_slice();
        let mut n = 1u64;
        while let Some(&&target) = next.peek() {
            while n <= target {
                let m = mu[n as usize];
                if m != 0 {
                    inv_sq.assign(n);
                    inv_sq.square_mut();
                    inv_sq.recip_mut();
                    pw.assign(&inv_sq);
                    for p in prefix.iter_mut().skip(1) {
                        if m > 0 {
                            *p += &pw;
                        } else {
                            *p -= &pw;
                        }
                        pw *= &inv_sq;
                    }
                }
                n += 1;
            }
            let moments =
                prefix
                    .iter()
                    .enumerate()
                    .map(|(order, p)| {
                        if order == 0 {
                            Float::new(prec)
                        } else {
                            Float::with_val(prec, zeta.inverse(order as u32) - p)
                        }
                    })
                    .collect();
            out.push(MobiusTail { cutoff: target, moments });
            next.next();
        }
        Ok(out)
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn max_order(&self) -> u32 {
        (self.moments.len() - 1) as u32
    }

    /// `T_m(N)`; `m` must be in `1..=max_order`.
    pub fn moment(&self, m: u32) -> &Float {
        assert!(m >= 1, "tail moments start at order 1");
        &self.moments[m as usize]
    }

    /// `log10` of the trivial bound `|T_m| ≤ Σ_{n>N} n^(-2m) ≤ N^(1-2m)/(2m-1)`.
    pub fn log10_bound(cutoff: u64, m: u32) -> f64 {
        let m = m as f64;
        (1.0 - 2.0 * m) * (cutoff as f64).log10() - (2.0 * m - 1.0).log10()
    }
}

/// Truncation of a tail expansion `Σ_{i≥0} coef_i T_{i+first_order}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct TailPlan {
    /// Number of expansion terms kept (`i < terms`).
    pub terms: u32,
    /// `max log10 |coef_i|` over the kept terms, floored at 0; the moments
    /// must be accurate to this many digits beyond the target.
    pub extra_digits: f64,
    /// `log10` of a bound on the discarded part.
    pub log10_truncation: f64,
}

/// Hard cap on expansion length; hitting it means the expansion parameter
/// (`k/N²` or `x/N²`) is too close to 1.
const MAX_TAIL_TERMS: u32 = 4000;

/// Chooses how many terms of a tail expansion to keep.
///
/// `log10_c0` is `log10 |coef_0|` and `step(i)` is `log10 |coef_{i+1}/coef_i|`
/// (`-∞` once the coefficients vanish). Terms are kept until the bound
/// `|coef_i| · N^(1-2m)/(2m-1)` on term `i` falls below `10^log10_target` while
/// shrinking by at least a factor of two per step, so the remainder is at most
/// twice the first discarded term.
pub(crate) fn plan_tail(
    cutoff: u64,
    first_order: u32,
    log10_c0: f64,
    step: impl Fn(u32) -> f64,
    log10_target: f64,
) -> Result<TailPlan> {
    let mut coef = log10_c0;
    let mut extra: f64 = 0.0;
    let mut prev = f64::INFINITY;
    for i in 0..MAX_TAIL_TERMS {
        let term = coef + MobiusTail::log10_bound(cutoff, i + first_order);
        if term < log10_target && term < prev - std::f64::consts::LOG10_2 {
            return Ok(TailPlan { terms: i, extra_digits: extra, log10_truncation: term + std::f64::consts::LOG10_2 });
        }
        extra = extra.max(coef);
        prev = term;
        coef += step(i);
        if coef == f64::NEG_INFINITY {
            return Ok(TailPlan { terms: i + 1, extra_digits: extra, log10_truncation: f64::NEG_INFINITY });
        }
    }
    Err(resource!(
        "tail expansion at cutoff N = {cutoff} did not converge in {MAX_TAIL_TERMS} terms; increase the cutoff"
    ))
}

/// Smallest cutoff of the form `⌈16 · 2^(i/4)⌉` that is at least `min`.
///
/// Batched evaluators round their cutoffs up to this ladder so that nearby
/// arguments share one set of tail moments.
pub fn ladder_cutoff(min: u64) -> u64 {
    let mut i = 0i32;
    loop {
        let c = (16.0 * 2f64.powf(i as f64 / 4.0)).ceil() as u64;
        if c >= min {
            return c;
        }
        i += 1;
    }
}

/// Tails for a set of cutoffs, looked up by cutoff.
#[derive(Clone, Debug)]
pub(crate) struct TailSet {
    tails: Vec<MobiusTail>,
}

impl TailSet {
    pub fn build(table: &MobiusTable, cutoffs: &[u64], max_order: u32, prec: u32) -> Result<Self> {
        let mut c = cutoffs.to_vec();
        c.sort_unstable();
        c.dedup();
        Ok(TailSet { tails: MobiusTail::grid(table, &c, max_order, prec)? })
    }

    pub fn get(&self, cutoff: u64) -> &MobiusTail {
        let i =
            self.tails.binary_search_by_key(&cutoff, |t| t.cutoff).expect("cutoff registered when the set was built");
        &self.tails[i]
    }
}
