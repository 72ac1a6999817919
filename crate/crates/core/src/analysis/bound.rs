//! The bound `|R(k)/k - c_k| ≤ 3√π/16·k^(-3/2) + 27/(2e³)·k^-2 + √π/144·k^(-5/2) + 128e^-4·k^-3`.

use rug::float::Constant;
use rug::Float;

use crate::analysis::fit::{count_extrema, fit_extrema, fit_log_log, FitResult, MIN_EXTREMA};
use crate::baez::{ck_moebius_batch, ck_moebius_range, moebius_cutoff, CkRecord};
use crate::error::{domain, Result};
use crate::precision::PrecisionContext;
use crate::riesz::{kummer_cutoff, riesz_kummer_batch, RieszMethod, RieszSample};
use crate::sieve::MobiusTable;

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub k: u64,
    /// `|R(k)/k - c_k|`.
    pub lhs: Float,
    /// `3√π/16 · k^(-3/2)`.
    pub rhs_leading: Float,
    /// All four terms of the bound.
    pub rhs_full: Float,
    pub holds: bool,
    /// Combined error estimate of the two evaluations entering `lhs`.
    pub err_estimate: Float,
}

/// The four coefficients `3√π/16`, `27/(2e³)`, `√π/144`, `128e^-4`.
pub fn bound_constants(prec: u32) -> [Float; 4] {
    let sqrt_pi = Float::with_val(prec, Constant::Pi).sqrt();
    let e = Float::with_val(prec, 1).exp();
    [
        Float::with_val(prec, &sqrt_pi * 3u32) / 16u32,
        Float::with_val(prec, 27) / (Float::with_val(prec, e.pow_ref3()) * 2u32),
        Float::with_val(prec, &sqrt_pi / 144u32),
        Float::with_val(prec, 128) / Float::with_val(prec, e.pow_ref4()),
    ]
}

trait SmallPow {
    fn pow_ref3(&self) -> Float;
    fn pow_ref4(&self) -> Float;
}

impl SmallPow for Float {
    fn pow_ref3(&self) -> Float {
        Float::with_val(self.prec(), self.square_ref()) * self
    }
    fn pow_ref4(&self) -> Float {
        Float::with_val(self.prec(), self.square_ref()).square()
    }
}

/// `(leading, full)` right-hand sides at `k`.
pub fn bound_rhs(k: u64, prec: u32) -> (Float, Float) {
    let [c32, c2, c52, c3] = bound_constants(prec);
    let kf = Float::with_val(prec, k);
    let sqrt_k = Float::with_val(prec, kf.sqrt_ref());
    let k2 = Float::with_val(prec, kf.square_ref());
    let k32 = Float::with_val(prec, &kf * &sqrt_k);
    let k52 = Float::with_val(prec, &k2 * &sqrt_k);
    let k3 = Float::with_val(prec, &k2 * &kf);
    let leading = c32 / k32;
    let full = Float::with_val(prec, &leading + c2 / k2) + c52 / k52 + c3 / k3;
    (leading, full)
}

fn report(r: &RieszSample, c: &CkRecord, prec: u32) -> BoundReport {
    let r_over_k = Float::with_val(prec, &r.value / c.k);
    let lhs = Float::with_val(prec, &r_over_k - &c.value).abs();
    let (rhs_leading, rhs_full) = bound_rhs(c.k, prec);
    BoundReport {
        k: c.k,
        holds: lhs <= rhs_full,
        lhs,
        rhs_leading,
        rhs_full,
        err_estimate: Float::with_val(r.err_estimate.prec(), &r.err_estimate / c.k) + &c.err_estimate,
    }
}

/// Möbius table size needed for bound reports up to `kmax`.
pub fn bound_table_size(kmax: u64, ctx: &PrecisionContext) -> u64 {
    moebius_cutoff(kmax, ctx).max(kummer_cutoff(kmax as f64, RieszMethod::Kummer2, ctx))
}

fn combine(ks: &[u64], cks: Vec<CkRecord>, table: &MobiusTable, ctx: &PrecisionContext) -> Result<Vec<BoundReport>> {
    let xs: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let rs = riesz_kummer_batch(&xs, RieszMethod::Kummer2, table, ctx)?;
    Ok(rs.iter().zip(&cks).map(|(r, c)| report(r, c, ctx.bits())).collect())
}

/// Bound reports for every `k` in `[kmin, kmax]`, with `c_k` from a
/// contiguous Möbius sweep and `R(k)` from the second Kummer form.
pub fn verify_bound(kmin: u64, kmax: u64, table: &MobiusTable, ctx: &PrecisionContext) -> Result<Vec<BoundReport>> {
    if kmin < 1 || kmin > kmax {
        return Err(domain!("bound range needs 1 ≤ kmin ≤ kmax, got [{kmin}, {kmax}]"));
    }
    let cks = ck_moebius_range(kmin, kmax, 1, table, ctx)?;
    let ks: Vec<u64> = (kmin..=kmax).collect();
    combine(&ks, cks, table, ctx)
}

/// Bound reports at arbitrary indices `k ≥ 1`, in the given order.
pub fn bound_reports(ks: &[u64], table: &MobiusTable, ctx: &PrecisionContext) -> Result<Vec<BoundReport>> {
    if ks.contains(&0) {
        return Err(domain!("the bound is stated for k ≥ 1"));
    }
    let cks = ck_moebius_batch(ks, table, ctx)?;
    combine(ks, cks, table, ctx)
}

/// About `points` distinct integers spread logarithmically over `[kmin, kmax]`.
pub fn log_spaced_indices(kmin: u64, kmax: u64, points: usize) -> Vec<u64> {
    if points < 2 || kmin >= kmax {
        return vec![kmin];
    }
    let (a, b) = ((kmin as f64).ln(), (kmax as f64).ln());
    let mut ks: Vec<u64> = (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp().round() as u64)
        .map(|k| k.clamp(kmin, kmax))
        .collect();
    ks.dedup();
    ks
}

/// Power-law fit of `|R(k)/k - c_k|` over `[kmin, kmax]` from `points`
/// log-spaced indices.
///
/// The difference oscillates with the first zero's frequency, whose period
/// in `ln k` is `4π/γ₁ ≈ 0.89`. A window of `MIN_EXTREMA` or more peaks is
/// fitted through its peaks, while shorter windows fall back to least squares
/// over every sample.
pub fn fit_ckdiff(
    kmin: u64,
    kmax: u64,
    points: usize,
    table: &MobiusTable,
    ctx: &PrecisionContext,
) -> Result<(FitResult, Vec<BoundReport>)> {
    if kmin < 1 || kmax < 10 * kmin {
        return Err(domain!("fit window [{kmin}, {kmax}] must start at k ≥ 1 and span a decade"));
    }
    let ks = log_spaced_indices(kmin, kmax, points);
    let reports = bound_reports(&ks, table, ctx)?;
    let xs: Vec<f64> = reports.iter().map(|r| r.k as f64).collect();
    let ys: Vec<f64> = reports.iter().map(|r| r.lhs.to_f64()).collect();
    let window = (kmin as f64, kmax as f64);
    let fit = if count_extrema(&xs, &ys, window) >= MIN_EXTREMA {
        fit_extrema(&xs, &ys, window, MIN_EXTREMA)?
    } else {
        fit_log_log(&xs, &ys, window)?
    };
    Ok((fit, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::fit::FitMethod;
    use crate::sieve::build_mobius;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30).unwrap()
    }

    #[test]
    fn constants_match_closed_forms() {
        let [a, b, c, d] = bound_constants(128);
        let sp = std::f64::consts::PI.sqrt();
        let e = std::f64::consts::E;
        assert!((a.to_f64() - 3.0 * sp / 16.0).abs() < 1e-15);
        assert!((b.to_f64() - 13.5 / e.powi(3)).abs() < 1e-15);
        assert!((c.to_f64() - sp / 144.0).abs() < 1e-15);
        assert!((d.to_f64() - 128.0 / e.powi(4)).abs() < 1e-14);
        let (l, f) = bound_rhs(1, 128);
        assert!((f.to_f64() - (a.to_f64() + b.to_f64() + c.to_f64() + d.to_f64())).abs() < 1e-14);
        assert!(l < f);
    }

    // Independent float64 evaluation of Σ_{n≤N} μ(n)/n² (e^(-k/n²) - (1 - 1/n²)^k);
    // the omitted tail is below k/N^5.
    fn direct_difference(k: u64, table: &MobiusTable, n_max: u64) -> f64 {
        table
            .squarefree(n_max)
            .map(|(n, m)| {
                let n2 = (n * n) as f64;
                let t = (-(k as f64) / n2).exp() - (k as f64 * (-1.0 / n2).ln_1p()).exp();
                m as f64 * t / n2
            })
            .sum()
    }

    #[test]
    fn lhs_matches_direct_difference() {
        let c = ctx();
        let table = build_mobius(20_000).unwrap();
        let ks = [1u64, 17, 100, 2500];
        let reps = bound_reports(&ks, &table, &c).unwrap();
        for r in &reps {
            let d = direct_difference(r.k, &table, 20_000).abs();
            assert!((r.lhs.to_f64() - d).abs() < 1e-13 + 1e-6 * d, "k = {}: {} vs {d}", r.k, r.lhs.to_f64());
        }
    }

    #[test]
    fn bound_holds_on_a_contiguous_range() {
        let c = ctx();
        let table = build_mobius(bound_table_size(600, &c)).unwrap();
        let reps = verify_bound(1, 600, &table, &c).unwrap();
        assert_eq!(reps.len(), 600);
        assert!(reps.iter().enumerate().all(|(i, r)| r.k == i as u64 + 1));
        assert!(reps.iter().filter(|r| r.k >= 17).all(|r| r.holds));
        for r in &reps {
            assert_eq!(r.holds, r.lhs <= r.rhs_full);
        }
    }

    #[test]
    fn range_and_pointwise_agree() {
        let c = ctx();
        let table = build_mobius(bound_table_size(800, &c)).unwrap();
        let a = verify_bound(700, 800, &table, &c).unwrap();
        let b = bound_reports(&[700, 750, 800], &table, &c).unwrap();
        for r in &b {
            let s = &a[(r.k - 700) as usize];
            assert!(Float::with_val(128, &r.lhs - &s.lhs).abs() < 1e-35);
        }
    }

    #[test]
    fn bad_ranges() {
        let c = ctx();
        let table = build_mobius(100).unwrap();
        assert!(verify_bound(0, 10, &table, &c).is_err());
        assert!(verify_bound(11, 10, &table, &c).is_err());
        assert!(bound_reports(&[0], &table, &c).is_err());
        assert!(fit_ckdiff(100, 500, 50, &table, &c).is_err());
    }

    #[test]
    fn log_spacing() {
        let ks = log_spaced_indices(10, 1000, 5);
        assert_eq!(ks, vec![10, 32, 100, 316, 1000]);
        let dense = log_spaced_indices(1, 5, 100);
        assert_eq!(dense, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn short_window_fit_uses_all_points() {
        let c = PrecisionContext::new(20).unwrap();
        let table = build_mobius(bound_table_size(2000, &c)).unwrap();
        let (fit, reps) = fit_ckdiff(200, 2000, 200, &table, &c).unwrap();
        assert_eq!(fit.method, FitMethod::AllPoints);
        assert_eq!(fit.points, reps.len());
        assert!(fit.exponent < -1.0 && fit.exponent > -3.0, "{fit:?}");
    }
}
