//! Envelope fits on real sweeps of `R(x)` and `c_k`.
//!
//! The oscillation of `R(x)` has amplitude `A·x^(1/4)` with `A` the modulus
//! of the first zero's coefficient. `R` also carries the smooth trivial-zero
//! term `x·trivial_zero_term(x) = -16.42/x`, which is comparable to the
//! oscillation near `x = 10⁴` and tilts peak fits that start there.

use rzl_core::analysis::bound::log_spaced_indices;
use rzl_core::analysis::{estimate_decay_exponent, fit_envelope, fit_extrema, trivial_zero_term, MIN_EXTREMA};
use rzl_core::baez::{ck_moebius_batch, moebius_cutoff};
use rzl_core::riesz::{required_table, riesz_sweep, Spacing, SweepGrid};
use rzl_core::zeros::coefficient_table;
use rzl_core::{build_mobius, PrecisionContext, RieszMethod, RieszSample};

fn sweep(xmin: f64, xmax: f64, points: usize, ctx: &PrecisionContext) -> Vec<RieszSample> {
    let grid = SweepGrid::new(xmax, points, Spacing::Log).with_xmin(xmin);
    let table = build_mobius(required_table(xmax, RieszMethod::Kummer2, ctx)).unwrap();
    riesz_sweep(&grid, &table, ctx).unwrap()
}

#[test]
fn riesz_envelope_grows_like_a_quarter_power() {
    let ctx = PrecisionContext::new(15).unwrap();
    let modulus = coefficient_table(1, &ctx).unwrap()[0].modulus.to_f64();
    let samples = sweep(1e4, 1e7, 2000, &ctx);

    // past the trivial-zero transient the raw peaks follow A·x^(1/4)
    let late = fit_envelope(&samples, (1e5, 1e7)).unwrap();
    assert!((late.exponent - 0.25).abs() <= 0.03, "{late:?}");
    assert!((late.amplitude / modulus - 1.0).abs() <= 0.25, "{late:?}");

    // over the whole window once the -16.42/x term is removed
    let xs: Vec<f64> = samples.iter().map(|s| s.x).collect();
    let oscillation: Vec<f64> = samples.iter().map(|s| s.value.to_f64() - s.x * trivial_zero_term(s.x)).collect();
    let full = fit_extrema(&xs, &oscillation, (1e4, 1e7), MIN_EXTREMA).unwrap();
    assert!((full.exponent - 0.25).abs() <= 0.01, "{full:?}");
    assert!((full.amplitude / modulus - 1.0).abs() <= 0.05, "{full:?}");

    // the raw fit from 10⁴ is tilted upward by the transient
    let raw = fit_envelope(&samples, (1e4, 1e7)).unwrap();
    assert!(raw.exponent > full.exponent + 0.01, "{raw:?} vs {full:?}");
}

#[test]
fn ck_decays_like_minus_three_quarters() {
    let ctx = PrecisionContext::new(15).unwrap();
    let (kmin, kmax) = (10_000u64, 1_000_000u64);
    let ks = log_spaced_indices(kmin, kmax, 1500);
    let table = build_mobius(moebius_cutoff(kmax, &ctx)).unwrap();
    let records = ck_moebius_batch(&ks, &table, &ctx).unwrap();
    let late = estimate_decay_exponent(&records, (1e5, 1e6));
    // [10⁵, 10⁶] holds fewer than MIN_EXTREMA peaks of |c_k|
    assert!(late.is_err());
    let fit = estimate_decay_exponent(&records, (kmin as f64, kmax as f64)).unwrap();
    assert!((fit.exponent + 0.75).abs() <= 0.05, "{fit:?}");
}
