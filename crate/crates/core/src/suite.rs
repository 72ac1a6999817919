//! The acceptance criteria as runnable checks, shared by the `acceptance`
//! test target and `rzl verify all`.
//!
//! Each criterion reports its required checks, optional informational
//! checks that do not affect the verdict, and its wall time against a
//! runtime limit.

use std::fmt;
use std::time::{Duration, Instant};

use rug::Float;

use crate::analysis::bound::bound_table_size;
use crate::analysis::partial::partial_sums_table_size;
use crate::analysis::{
    abel_integral, alternating_sum, alternating_sum_moebius, compare_spectral, fit_ckdiff, partial_sums, verify_bound,
    verify_generating_identity,
};
use crate::baez::{ck_binomial, ck_difftable, ck_moebius_batch, ck_sweep, moebius_cutoff, CkMethod};
use crate::error::{domain, Result};
use crate::mpcore::format_float;
use crate::precision::PrecisionContext;
use crate::riesz::{first_zero, required_table, riesz_kummer_batch, riesz_series, RieszMethod};
use crate::sieve::build_mobius;
use crate::zeros::coefficient_table;

/// Number of criteria.
pub const CRITERION_COUNT: u32 = 10;

/// First positive zero of `R`.
pub const FIRST_ZERO: f64 = 1.156_711_643_8;

/// `Σ_{k≥1} 2^-k/ζ(2k)` to 24 decimals.
pub const ALTERNATING_SUM: &str = "0.782527985325384234576688";

/// Printed envelope constant.
pub const ENVELOPE_CONSTANT: f64 = 0.777_506e-5;

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { label: label.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    /// Checks that decide the verdict.
    pub checks: Vec<Check>,
    /// Checks reported alongside, outside the verdict.
    pub notes: Vec<Check>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionReport {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.within_limit() && self.checks.iter().all(|c| c.passed)
    }

    /// One verdict line followed by one line per informational check.
    pub fn lines(&self) -> Vec<String> {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let body: Vec<String> = self
            .checks
            .iter()
            .map(|c| format!("{}{}: {}", if c.passed { "" } else { "[x] " }, c.label, c.detail))
            .collect();
        let time = format!(
            "{:.1} s of {} s{}",
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            if self.within_limit() { "" } else { " exceeded" }
        );
        let mut out = vec![format!("{verdict} {:>2} {}: {}; {time}", self.id, self.title, body.join("; "))];
        out.extend(self.notes.iter().map(|n| {
            format!("     info {}: {} ({})", n.label, n.detail, if n.passed { "holds" } else { "does not hold" })
        }));
        out
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lines().join("\n"))
    }
}

fn title(id: u32) -> &'static str {
    match id {
        1 => "first zero of R",
        2 => "alternating sum",
        3 => "c_k method agreement",
        4 => "R cross-method agreement",
        5 => "|R(k)/k - c_k| bound",
        6 => "|c_k - R(k)/k| decay exponent",
        7 => "envelope constant",
        8 => "generating identity",
        9 => "partial-sum crossing",
        _ => "single-zero spectral model",
    }
}

fn limit(id: u32) -> Duration {
    Duration::from_secs(match id {
        1 => 10,
        2 => 30,
        3 => 300,
        4 | 7 | 8 => 60,
        5 => 600,
        6 | 10 => 900,
        _ => 1200,
    })
}

/// Runs criterion `id` (1 to [`CRITERION_COUNT`]).
pub fn run_criterion(id: u32) -> Result<CriterionReport> {
    if !(1..=CRITERION_COUNT).contains(&id) {
        return Err(domain!("criteria are numbered 1 to {CRITERION_COUNT}, got {id}"));
    }
    let start = Instant::now();
    let (checks, notes) = match id {
        1 => first_zero_checks()?,
        2 => alternating_checks()?,
        3 => ck_agreement_checks()?,
        4 => riesz_agreement_checks()?,
        5 => bound_checks()?,
        6 => decay_checks()?,
        7 => envelope_checks()?,
        8 => generating_checks()?,
        9 => partial_sum_checks()?,
        _ => spectral_checks()?,
    };
    Ok(CriterionReport { id, title: title(id), checks, notes, elapsed: start.elapsed(), limit: limit(id) })
}

type Checks = (Vec<Check>, Vec<Check>);

fn ctx(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits)
}

fn abs_diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

fn first_zero_checks() -> Result<Checks> {
    let z = first_zero(&ctx(30)?)?.to_f64();
    let d = (z - FIRST_ZERO).abs();
    Ok((vec![Check::new("zero", d < 1e-9, format!("{z:.12}, |Δ| = {d:.1e}"))], vec![]))
}

fn alternating_checks() -> Result<Checks> {
    let c = ctx(40)?;
    let sum = alternating_sum(&c)?;
    let reference = Float::with_val(c.bits(), Float::parse(ALTERNATING_SUM).expect("valid literal"));
    let d = abs_diff(&sum, &reference);
    let (abel, _) = abel_integral(&ctx(20)?)?;
    let da = abs_diff(&abel, &sum);
    let moebius = alternating_sum_moebius(&ctx(20)?)?;
    let dm = abs_diff(&moebius, &sum);
    Ok((
        vec![
            Check::new("sum", d < 1e-24, format!("{}, |Δ| = {d:.1e}", format_float(&sum, 26))),
            Check::new("Abel integral", da < 1e-12, format!("|Δ| = {da:.1e}")),
            Check::new("power series at s = -1", dm < 1e-12, format!("|Δ| = {dm:.1e}")),
        ],
        vec![],
    ))
}

fn ck_agreement_checks() -> Result<Checks> {
    let c = ctx(30)?;
    let ks: Vec<u64> = (0..=64).chain([128, 256, 512]).collect();
    let table = build_mobius(moebius_cutoff(512, &c))?;
    let moebius = ck_moebius_batch(&ks, &table, &c)?;
    let (mut exact, mut worst) = (true, 0.0f64);
    for (&k, m) in ks.iter().zip(&moebius) {
        let b = ck_binomial(k, &c)?;
        let t = ck_difftable(k, &c)?.record(k, &c);
        exact &= b.value == t.value;
        worst = worst.max(abs_diff(&b.value, &m.value));
    }
    Ok((
        vec![
            Check::new("binomial = difference table", exact, format!("{} indices", ks.len())),
            Check::new("binomial vs Möbius", worst < 1e-20, format!("max |Δ| = {worst:.1e}")),
        ],
        vec![],
    ))
}

fn riesz_agreement_checks() -> Result<Checks> {
    let c = ctx(30)?;
    let xs: Vec<f64> = (0..50).map(|i| 10f64.powf(-1.0 + 4.0 * i as f64 / 49.0)).collect();
    let xmax = xs[xs.len() - 1];
    let table = build_mobius(required_table(xmax, RieszMethod::Kummer1, &c).max(required_table(
        xmax,
        RieszMethod::Kummer2,
        &c,
    )))?;
    let series = xs.iter().map(|&x| riesz_series(x, &c)).collect::<Result<Vec<_>>>()?;
    let k1 = riesz_kummer_batch(&xs, RieszMethod::Kummer1, &table, &c)?;
    let k2 = riesz_kummer_batch(&xs, RieszMethod::Kummer2, &table, &c)?;
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for ((s, a), b) in series.iter().zip(&k1).zip(&k2) {
        for (u, v) in [(s, a), (s, b), (a, b)] {
            let d = abs_diff(&u.value, &v.value);
            let allowed = Float::with_val(64, &u.err_estimate + &v.err_estimate).to_f64();
            worst = worst.max(d);
            if d > allowed {
                bad.push(u.x);
            }
        }
    }
    bad.dedup();
    let detail = if bad.is_empty() {
        format!("50 points, max |Δ| = {worst:.1e}")
    } else {
        format!("disagreement at x = {bad:?}")
    };
    Ok((vec![Check::new("series, Kummer1, Kummer2", bad.is_empty(), detail)], vec![]))
}

fn bound_checks() -> Result<Checks> {
    let c = ctx(30)?;
    let (kmin, kmax) = (17, 10_000);
    let table = build_mobius(bound_table_size(kmax, &c))?;
    let reports = verify_bound(kmin, kmax, &table, &c)?;
    let failing: Vec<u64> = reports.iter().filter(|r| !r.holds).map(|r| r.k).collect();
    let tightest = reports.iter().map(|r| (r.lhs.to_f64() / r.rhs_full.to_f64(), r.k)).fold((0.0, 0), |a, b| {
        if b.0 > a.0 {
            b
        } else {
            a
        }
    });
    let detail = if failing.is_empty() {
        format!("k in [{kmin}, {kmax}], largest lhs/rhs = {:.3} at k = {}", tightest.0, tightest.1)
    } else {
        format!("{} violations, first at k = {}", failing.len(), failing[0])
    };
    Ok((vec![Check::new("bound", failing.is_empty(), detail)], vec![]))
}

fn decay_checks() -> Result<Checks> {
    let c = ctx(20)?;
    let (kmin, kmax) = (10_000, 100_000);
    let table = build_mobius(bound_table_size(kmax, &c))?;
    let (fit, _) = fit_ckdiff(kmin, kmax, 400, &table, &c)?;
    let e = fit.exponent;
    let detail = format!("exponent {e:.3} ({}, {} points)", fit.method.as_str(), fit.points);
    Ok((
        vec![Check::new("exponent -1.5 ± 0.1", (e + 1.5).abs() <= 0.1, detail.clone())],
        vec![Check::new("exponent -7/4 ± 0.1", (e + 1.75).abs() <= 0.1, detail)],
    ))
}

fn envelope_checks() -> Result<Checks> {
    let coeffs = coefficient_table(1, &ctx(30)?)?;
    let m = coeffs[0].modulus.to_f64();
    let rel = m / ENVELOPE_CONSTANT - 1.0;
    let rel10 = m / (10.0 * ENVELOPE_CONSTANT) - 1.0;
    Ok((
        vec![Check::new(
            "modulus vs 0.777506e-5 within 2%",
            rel.abs() <= 0.02,
            format!("{m:.6e}, relative difference {rel:.3}"),
        )],
        vec![Check::new(
            "modulus vs 0.777506e-4 within 2%",
            rel10.abs() <= 0.02,
            format!("relative difference {rel10:.1e}"),
        )],
    ))
}

fn generating_checks() -> Result<Checks> {
    let c = ctx(30)?;
    let mut worst = 0.0f64;
    for x in [1.0, 2.0, 5.0, 10.0] {
        worst = worst.max(verify_generating_identity(x, 100, &c)?.residual.to_f64());
    }
    Ok((vec![Check::new("x in {1, 2, 5, 10}, kmax 100", worst < 1e-10, format!("max residual {worst:.1e}"))], vec![]))
}

fn partial_sum_checks() -> Result<Checks> {
    let c = ctx(15)?;
    let kmax = 100_000;
    let table = build_mobius(partial_sums_table_size(kmax, &c))?;
    let ps = partial_sums(kmax, &table, &c)?;
    let crossing = ps.first_crossing;
    let crossed = matches!(crossing, Some(k) if (80_000..=100_000).contains(&k));
    let crossing_detail = match crossing {
        Some(k) => format!("first K with S_K < -2 is {k}"),
        None => format!("no crossing up to K = {kmax}"),
    };

    let c20 = ctx(20)?;
    let small = 2000;
    let table = build_mobius(partial_sums_table_size(small, &c20))?;
    let fast = partial_sums(small, &table, &c20)?;
    let cks = ck_sweep(small, CkMethod::Moebius, 1, &table, &c20)?;
    let (mut s, mut a, mut worst) = (0.0f64, 0.0f64, 0.0f64);
    for (t, r) in fast.traces.iter().zip(&cks) {
        let v = r.value.to_f64();
        s += v;
        a += if r.k % 2 == 0 { v } else { -v };
        worst = worst.max((t.s_plain - s).abs()).max((t.s_alt - a).abs());
    }
    Ok((
        vec![
            Check::new("crossing in [80000, 100000]", crossed, crossing_detail),
            Check::new("direct summation to K = 2000", worst < 1e-10, format!("max |Δ| = {worst:.1e}")),
        ],
        vec![],
    ))
}

fn spectral_checks() -> Result<Checks> {
    let c = ctx(15)?;
    let (kmin, kmax, points) = (10_000, 1_000_000, 1500);
    let coeffs = coefficient_table(1, &c)?;
    let table = build_mobius(moebius_cutoff(kmax, &c))?;
    let bare = compare_spectral(kmin, kmax, points, &coeffs, false, &table, &c)?;
    let full = compare_spectral(kmin, kmax, points, &coeffs, true, &table, &c)?;
    let describe = |s: &crate::analysis::SpectralComparison| {
        (
            format!("relative error {:.3}", s.amplitude_error()),
            format!(
                "max offset {:.3} spacings, {} measured vs {} model crossings",
                s.phase_error(),
                s.crossings_measured.len(),
                s.crossings_model.len()
            ),
        )
    };
    let (amp, phase) = describe(&bare);
    let (amp_full, phase_full) = describe(&full);
    Ok((
        vec![
            Check::new("amplitude within 20%", bare.amplitude_error().abs() <= 0.2, amp),
            Check::new("crossings within 5%", bare.phase_error() <= 0.05, phase),
        ],
        vec![
            Check::new("with the k^-2 term, amplitude within 20%", full.amplitude_error().abs() <= 0.2, amp_full),
            Check::new("with the k^-2 term, crossings within 5%", full.phase_error() <= 0.05, phase_full),
        ],
    ))
}
