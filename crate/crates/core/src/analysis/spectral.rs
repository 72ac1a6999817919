//! Comparison of Möbius-form `c_k` with the oscillatory model built from
//! zero coefficients, on the rescaled series `c_k · k^(3/4)`.
//!
//! The zero model keeps only the residues at `s = 1 - ρ/2` of
//! `Γ(s) k^-s / ζ(2 - 2s)`. The trivial zero `ζ(-2) = 0` adds the residue at
//! `s = 2`, which is `-2π²/(ζ(3) k²)`. After rescaling this is
//! `-16.4 k^(-5/4)`, twice the oscillation amplitude at `k = 10⁴`, so it
//! displaces the crossings at the low end of a window starting there. It
//! can be included with `with_trivial_term`.

use std::f64::consts::PI;

use crate::analysis::bound::log_spaced_indices;
use crate::analysis::fit::refined_peaks;
use crate::baez::{ck_moebius_batch, ck_spectral, MIN_SPECTRAL_INDEX};
use crate::error::{domain, numeric, Result};
use crate::precision::PrecisionContext;
use crate::sieve::MobiusTable;
use crate::zeros::ZeroCoefficient;

#[derive(Clone, Debug)]
pub struct SpectralComparison {
    pub ks: Vec<u64>,
    /// `c_k · k^(3/4)` from the Möbius form.
    pub measured: Vec<f64>,
    /// The same from the zero model.
    pub model: Vec<f64>,
    /// Mean refined peak height of `|measured|`.
    pub amplitude_measured: f64,
    pub amplitude_model: f64,
    /// Sign changes of each series, interpolated in `ln k`.
    pub crossings_measured: Vec<f64>,
    pub crossings_model: Vec<f64>,
    /// Largest `|Δ ln k|` between a model crossing and the nearest measured one.
    pub max_phase_offset: f64,
    /// Spacing `2π/γ₁` of consecutive crossings in `ln k`.
    pub crossing_spacing: f64,
}

impl SpectralComparison {
    /// `amplitude_measured / amplitude_model - 1`.
    pub fn amplitude_error(&self) -> f64 {
        self.amplitude_measured / self.amplitude_model - 1.0
    }

    /// Phase offset as a fraction of the crossing spacing.
    pub fn phase_error(&self) -> f64 {
        self.max_phase_offset / self.crossing_spacing
    }
}

fn crossings(ks: &[u64], ys: &[f64]) -> Vec<f64> {
    ks.windows(2)
        .zip(ys.windows(2))
        .filter(|(_, y)| y[0] != 0.0 && y[0].signum() != y[1].signum())
        .map(|(k, y)| {
            let (a, b) = ((k[0] as f64).ln(), (k[1] as f64).ln());
            a + (b - a) * y[0] / (y[0] - y[1])
        })
        .collect()
}

fn mean_peak(ks: &[u64], ys: &[f64]) -> Result<f64> {
    let xs: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let window = (xs[0], *xs.last().expect("nonempty"));
    let p = refined_peaks(&xs, ys, window);
    if p.is_empty() {
        return Err(numeric!("no peaks of c_k·k^(3/4) in [{}, {}]", window.0, window.1));
    }
    Ok(p.iter().map(|(_, v)| v).sum::<f64>() / p.len() as f64)
}

/// `-2π²/(ζ(3) k²)`, the contribution of the trivial zero at `-2` to `c_k`.
pub fn trivial_zero_term(k: f64) -> f64 {
    const ZETA3: f64 = 1.202_056_903_159_594_3;
    -2.0 * PI * PI / (ZETA3 * k * k)
}

/// Compares `c_k` at about `points` log-spaced `k ∈ [kmin, kmax]` with the
/// model from `coeffs` (sorted by ordinate), optionally plus
/// [`trivial_zero_term`].
pub fn compare_spectral(
    kmin: u64,
    kmax: u64,
    points: usize,
    coeffs: &[ZeroCoefficient],
    with_trivial_term: bool,
    table: &MobiusTable,
    ctx: &PrecisionContext,
) -> Result<SpectralComparison> {
    if kmin < MIN_SPECTRAL_INDEX || kmax <= kmin {
        return Err(domain!("spectral comparison needs {MIN_SPECTRAL_INDEX} ≤ kmin < kmax, got [{kmin}, {kmax}]"));
    }
    let first = coeffs.first().ok_or_else(|| domain!("the spectral model needs at least one zero"))?;
    let ks = log_spaced_indices(kmin, kmax, points);
    let scale: Vec<f64> = ks.iter().map(|&k| (k as f64).powf(0.75)).collect();
    let measured: Vec<f64> =
        ck_moebius_batch(&ks, table, ctx)?.iter().zip(&scale).map(|(r, s)| r.value.to_f64() * s).collect();
    let model: Vec<f64> = ks
        .iter()
        .zip(&scale)
        .map(|(&k, s)| {
            let extra = if with_trivial_term { trivial_zero_term((k + 1) as f64) } else { 0.0 };
            Ok((ck_spectral(k + 1, coeffs)?.value.to_f64() + extra) * s)
        })
        .collect::<Result<_>>()?;
    let crossings_measured = crossings(&ks, &measured);
    let crossings_model = crossings(&ks, &model);
    let max_phase_offset = crossings_model
        .iter()
        .map(|c| crossings_measured.iter().map(|m| (m - c).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    Ok(SpectralComparison {
        amplitude_measured: mean_peak(&ks, &measured)?,
        amplitude_model: mean_peak(&ks, &model)?,
        crossing_spacing: 2.0 * PI / first.gamma.to_f64(),
        ks,
        measured,
        model,
        crossings_measured,
        crossings_model,
        max_phase_offset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baez::moebius_cutoff;
    use crate::sieve::build_mobius;
    use crate::zeros::coefficient_table;

    #[test]
    fn trivial_term_value() {
        // 2π²/ζ(3) = 16.4218…
        assert!((trivial_zero_term(1.0) + 16.421_8).abs() < 1e-3);
        assert!((trivial_zero_term(10.0) * 100.0 - trivial_zero_term(1.0)).abs() < 1e-12);
    }

    #[test]
    fn crossings_interpolate_linearly() {
        let ks = [1u64, 10, 100];
        let c = crossings(&ks, &[1.0, -1.0, -2.0]);
        assert_eq!(c.len(), 1);
        assert!((c[0] - 0.5 * 10f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn model_tracks_moebius_values() {
        let c = PrecisionContext::new(15).unwrap();
        let coeffs = coefficient_table(1, &c).unwrap();
        let table = build_mobius(moebius_cutoff(50_000, &c)).unwrap();
        // zeros only: the k^-2 term shifts the low-k crossings
        let bare = compare_spectral(2000, 50_000, 400, &coeffs, false, &table, &c).unwrap();
        assert!((bare.amplitude_model / coeffs[0].modulus.to_f64() - 1.0).abs() < 1e-3);
        assert!(bare.crossings_measured.len() < bare.crossings_model.len());
        let full = compare_spectral(2000, 50_000, 400, &coeffs, true, &table, &c).unwrap();
        assert_eq!(full.crossings_measured.len(), full.crossings_model.len());
        assert!(full.phase_error() < 0.05, "{}", full.phase_error());
        assert!(full.amplitude_error().abs() < 0.2, "{}", full.amplitude_error());
        assert!(compare_spectral(50, 100, 10, &coeffs, false, &table, &c).is_err());
        assert!(compare_spectral(200, 300, 10, &[], false, &table, &c).is_err());
    }
}
