//! Power-law fits `|y| ≈ A·x^p` over the local maxima of an oscillating series.
//!
//! Regressing all samples would let the oscillating factor bias the fit, so
//! only peaks of `|y|` enter. The fit runs twice. The first pass takes the raw
//! maxima of `|y|`. The second pass finds the maxima of `|y|·x^-p`, using the
//! first-pass exponent, which places each peak where the oscillating factor
//! peaks. It then refines each peak with a parabola through three neighbouring
//! samples in `ln x` and refits.

use crate::baez::CkRecord;
use crate::error::{numeric, Result};
use crate::riesz::RieszSample;

/// Minimum number of peaks for an envelope fit.
pub const MIN_EXTREMA: usize = 10;

/// Which points entered a fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitMethod {
    /// Every sample in the window.
    AllPoints,
    /// Refined local maxima of `|y|`.
    Extrema,
}

impl FitMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            FitMethod::AllPoints => "all-points",
            FitMethod::Extrema => "extrema",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult {
    pub amplitude: f64,
    pub exponent: f64,
    pub window: (f64, f64),
    /// RMS residual of `ln|y|` about the fitted line.
    pub residual: f64,
    /// Number of points entering the final regression.
    pub points: usize,
    pub method: FitMethod,
}

/// Least squares of `ln y` against `ln x`; `y` must be positive.
pub fn fit_log_log(xs: &[f64], ys: &[f64], window: (f64, f64)) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x >= window.0 && **x <= window.1 && **y > 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(numeric!("power-law fit needs at least two positive points in [{}, {}]", window.0, window.1));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(numeric!("power-law fit needs distinct abscissae"));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - icept - slope * p.0).powi(2)).sum();
    Ok(FitResult {
        amplitude: icept.exp(),
        exponent: slope,
        window,
        residual: (rss / n).sqrt(),
        points: pts.len(),
        method: FitMethod::AllPoints,
    })
}

/// Indices of interior local maxima of `v` (plateaus count once).
fn local_maxima(v: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < v.len() {
        if v[i] > v[i - 1] {
            let mut j = i;
            while j + 1 < v.len() && v[j + 1] == v[i] {
                j += 1;
            }
            if j + 1 < v.len() && v[j + 1] < v[i] {
                out.push((i + j) / 2);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

/// Vertex of the parabola through three points, as `(t, value)`.
fn parabolic_peak(t: [f64; 3], v: [f64; 3]) -> (f64, f64) {
    let d1 = (v[1] - v[0]) / (t[1] - t[0]);
    let d2 = (v[2] - v[1]) / (t[2] - t[1]);
    let curv = (d2 - d1) / (t[2] - t[0]);
    if curv >= 0.0 {
        return (t[1], v[1]);
    }
    // Newton form v(t) = v0 + d1 (t - t0) + curv (t - t0)(t - t1)
    let tp = 0.5 * (t[0] + t[1]) - d1 / (2.0 * curv);
    if tp < t[0] || tp > t[2] {
        return (t[1], v[1]);
    }
    (tp, v[0] + d1 * (tp - t[0]) + curv * (tp - t[0]) * (tp - t[1]))
}

/// Peaks of `ln|y| - p·ln x` on the window, refined parabolically.
fn peaks(lx: &[f64], ly: &[f64], p: f64) -> Vec<(f64, f64)> {
    let g: Vec<f64> = lx.iter().zip(ly).map(|(x, y)| y - p * x).collect();
    local_maxima(&g)
        .into_iter()
        .map(|i| {
            let (t, v) = parabolic_peak([lx[i - 1], lx[i], lx[i + 1]], [g[i - 1], g[i], g[i + 1]]);
            (t, v + p * t)
        })
        .collect()
}

/// Envelope fit `|y| ≈ A·x^p` over the peaks of `|y|` inside `window`.
///
/// `xs` must be increasing. Fails when the window spans less than a decade or
/// holds fewer than `min_extrema` peaks.
pub fn fit_extrema(xs: &[f64], ys: &[f64], window: (f64, f64), min_extrema: usize) -> Result<FitResult> {
    if !(window.0 > 0.0 && window.1 >= 10.0 * window.0) {
        return Err(numeric!("fit window [{}, {}] spans less than one decade", window.0, window.1));
    }
    let (lx, ly): (Vec<f64>, Vec<f64>) = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x >= window.0 && **x <= window.1 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.abs().max(f64::MIN_POSITIVE).ln()))
        .unzip();
    let first = peaks(&lx, &ly, 0.0);
    if first.len() < min_extrema {
        return Err(numeric!("only {} local extrema in [{}, {}]; need {min_extrema}", first.len(), window.0, window.1));
    }
    let (t, v): (Vec<f64>, Vec<f64>) = first.into_iter().unzip();
    let pass1 = fit_log_log(&exp_all(&t), &exp_all(&v), window)?;
    let second = peaks(&lx, &ly, pass1.exponent);
    if second.len() < min_extrema {
        return Err(numeric!("only {} local extrema after detrending; need {min_extrema}", second.len()));
    }
    let (t, v): (Vec<f64>, Vec<f64>) = second.into_iter().unzip();
    let fit = fit_log_log(&exp_all(&t), &exp_all(&v), window)?;
    Ok(FitResult { method: FitMethod::Extrema, ..fit })
}

/// Peaks of `|y|` inside `window` as `(x, |y|)`, each refined by a parabola
/// through its neighbours in `(ln x, ln|y|)`.
pub fn refined_peaks(xs: &[f64], ys: &[f64], window: (f64, f64)) -> Vec<(f64, f64)> {
    let (lx, ly): (Vec<f64>, Vec<f64>) = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x >= window.0 && **x <= window.1 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.abs().max(f64::MIN_POSITIVE).ln()))
        .unzip();
    peaks(&lx, &ly, 0.0).into_iter().map(|(t, v)| (t.exp(), v.exp())).collect()
}

/// Number of peaks of `|y|` inside `window`.
pub fn count_extrema(xs: &[f64], ys: &[f64], window: (f64, f64)) -> usize {
    let a: Vec<f64> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x >= window.0 && **x <= window.1 && y.is_finite())
        .map(|(_, y)| y.abs())
        .collect();
    local_maxima(&a).len()
}

fn exp_all(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| x.exp()).collect()
}

/// Envelope of `|R(x)|` over a sweep.
pub fn fit_envelope(samples: &[RieszSample], window: (f64, f64)) -> Result<FitResult> {
    let xs: Vec<f64> = samples.iter().map(|s| s.x).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.value.to_f64()).collect();
    fit_extrema(&xs, &ys, window, MIN_EXTREMA)
}

/// Decay exponent of `|c_k|` over a sweep.
pub fn estimate_decay_exponent(records: &[CkRecord], window: (f64, f64)) -> Result<FitResult> {
    let xs: Vec<f64> = records.iter().map(|r| r.k as f64).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.value.to_f64()).collect();
    fit_extrema(&xs, &ys, window, MIN_EXTREMA)
}
