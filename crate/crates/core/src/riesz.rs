//! The Riesz function `R(x) = x Σ_{k≥0} (-x)^k / (k! ζ(2k+2))`.
//!
//! Three evaluators are provided:
//!
//! * [`riesz_series`] sums the defining power series. The terms grow to about
//!   `e^|x|/√|x|` before they decay, so the working precision is raised by
//!   `|x|·log10 e` digits. Limited to `|x| ≤ 10^4`.
//! * [`riesz_kummer1`] sums `x Σ μ(n) n^-2 e^(-x/n²)`.
//! * [`riesz_kummer2`] sums `x (6/π² + Σ μ(n) n^-2 (e^(-x/n²) - 1))` using
//!   MPFR's `expm1`, which keeps full relative accuracy for large `n`.
//!
//! Both Möbius forms truncate at `n ≤ N` and add the discarded tail exactly
//! through the moments `T_m(N) = Σ_{n>N} μ(n) n^(-2m)`:
//! `Σ_{n>N} μ(n) n^-2 e^(-x/n²) = Σ_j (-x)^j/j! T_{j+1}`. The expansion
//! parameter is `x/N²`; the cutoff is `N = ⌈4·f·√x⌉` (at least 16), with
//! `f` the context's tail factor, which gives `x/N² ≤ 1/(16f²)`. `kummer1`
//! uses twice that cutoff so the two evaluators share no truncation.
//! Cutoffs are rounded up to [`ladder_cutoff`] values so batches share tails.
//!
//! Accuracy targets are absolute: the reported error is a bound on
//! `|value - R(x)|` and is aimed at `10^-(digits + guard)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Float;

use crate::error::{domain, resource, Error, Result};
use crate::mpcore::six_over_pi_sq;
use crate::precision::{digits_to_bits, err_float, PrecisionContext};
use crate::roots::brent;
use crate::sieve::{build_mobius, MobiusTable};
use crate::zeta::{ladder_cutoff, plan_tail, MobiusTail, TailPlan, TailSet, ZetaEvenTable};

/// Largest `|x|` accepted by [`riesz_series`].
pub const MAX_SERIES_ARG: f64 = 1e4;

/// Bracket holding the first positive zero of `R`.
pub const FIRST_ZERO_BRACKET: (f64, f64) = (1.0, 1.3);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RieszMethod {
    Series,
    Kummer1,
    Kummer2,
}

impl RieszMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RieszMethod::Series => "series",
            RieszMethod::Kummer1 => "kummer1",
            RieszMethod::Kummer2 => "kummer2",
        }
    }
}

impl fmt::Display for RieszMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RieszMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(RieszMethod::Series),
            "kummer1" => Ok(RieszMethod::Kummer1),
            "kummer2" => Ok(RieszMethod::Kummer2),
            _ => Err(domain!("unknown Riesz method '{s}' (expected series, kummer1 or kummer2)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RieszSample {
    pub x: f64,
    pub value: Float,
    pub method: RieszMethod,
    /// Series terms (for `series`) or Möbius cutoff `N` (for the Kummer forms).
    pub terms_used: u64,
    pub err_estimate: Float,
}

impl RieszSample {
    fn zero(x: f64, method: RieszMethod, ctx: &PrecisionContext) -> Self {
        RieszSample { x, value: Float::new(ctx.bits()), method, terms_used: 0, err_estimate: err_float(0) }
    }
}

/// `R(x)` from the power series.
pub fn riesz_series(x: f64, ctx: &PrecisionContext) -> Result<RieszSample> {
    if !x.is_finite() {
        return Err(domain!("R(x) needs a finite argument, got {x}"));
    }
    if x.abs() > MAX_SERIES_ARG {
        return Err(resource!(
            "the power series for R({x}) needs about {:.0} extra digits; use the kummer2 evaluator",
            x.abs() * std::f64::consts::LOG10_E
        ));
    }
    if x == 0.0 {
        return Ok(RieszSample::zero(x, RieszMethod::Series, ctx));
    }
    let ax = x.abs();
    let w = ctx.working_digits() as f64;
    let lx = ax.max(1.0).log10();
    let stop = -(w + 2.0) - lx;

    // log10 |x|^k/k! over k, to size the sum and the precision
    let mut log_term = 0.0f64;
    let mut peak = 0.0f64;
    let mut k = 0u64;
    loop {
        if (k as f64) > ax && log_term < stop {
            break;
        }
        k += 1;
        log_term += (ax / k as f64).log10();
        peak = peak.max(log_term);
    }
    let terms = k;
    let digits = w + peak + (terms as f64).log10() + 5.0;
    let prec = digits_to_bits(digits.ceil() as u32);
    let zeta = ZetaEvenTable::new(terms as u32 + 1, prec)?;

    let mx = Float::with_val(prec, -x);
    let mut pw = Float::with_val(prec, 1);
    let mut sum = Float::new(prec);
    for j in 0..terms {
        sum += Float::with_val(prec, &pw * zeta.f(j as u32));
        pw *= &mx;
        pw /= j + 1;
    }
    let value = Float::with_val(ctx.bits(), sum * x);
    let trunc = 10f64.powf(lx + log_term + std::f64::consts::LOG10_2);
    let round = 10f64.powf(lx + peak + (terms as f64).log10() - digits + 1.0);
    Ok(RieszSample { x, value, method: RieszMethod::Series, terms_used: terms, err_estimate: err_float(trunc + round) })
}

struct KummerPlan {
    cutoff: u64,
    tail: TailPlan,
    first_order: u32,
    main_digits: f64,
    tail_digits: f64,
}

/// Möbius cutoff `N` (before ladder rounding) used for `x`.
pub fn kummer_cutoff(x: f64, method: RieszMethod, ctx: &PrecisionContext) -> u64 {
    let base = ((4.0 * x.max(0.0).sqrt() * ctx.series_tail_factor()).ceil() as u64).max(16);
    let n = if method == RieszMethod::Kummer1 { 2 * base } else { base };
    ladder_cutoff(n)
}

fn kummer_plan(x: f64, method: RieszMethod, ctx: &PrecisionContext) -> Result<KummerPlan> {
    let cutoff = kummer_cutoff(x, method, ctx);
    let w = ctx.working_digits() as f64;
    let lx = x.max(1.0).log10();
    let target = -w - lx - 1.0;
    // Kummer1 tail: Σ_{i≥0} (-x)^i/i! T_{i+1}; Kummer2 tail: Σ_{i≥0} (-x)^{i+1}/(i+1)! T_{i+2}
    let (c0, first_order) = match method {
        RieszMethod::Kummer1 => (0.0, 1),
        _ => (x.log10(), 2),
    };
    let tail = plan_tail(cutoff, first_order, c0, |i| (x / (i + first_order) as f64).log10(), target)?;
    let ln = (cutoff as f64).log10();
    Ok(KummerPlan {
        cutoff,
        tail,
        first_order,
        main_digits: w + lx + ln + 3.0,
        tail_digits: w + lx + tail.extra_digits + ln + 5.0,
    })
}

fn kummer_value(
    x: &Float,
    method: RieszMethod,
    plan: &KummerPlan,
    table: &MobiusTable,
    tail: &MobiusTail,
    ctx: &PrecisionContext,
) -> (Float, Float) {
    let p = digits_to_bits(plan.main_digits.ceil() as u32);
    let xm = Float::with_val(p, x);
    let mut acc = Float::new(p);
    let mut inv = Float::new(p);
    let mut e = Float::new(p);
    for (n, mu) in table.squarefree(plan.cutoff) {
        inv.assign_recip_sq(n);
        e.assign_neg_product(&xm, &inv);
        match method {
            RieszMethod::Kummer1 => e.exp_mut(),
            _ => e.exp_m1_mut(),
        }
        e *= &inv;
        if mu > 0 {
            acc += &e;
        } else {
            acc -= &e;
        }
    }
    if method == RieszMethod::Kummer2 {
        acc += six_over_pi_sq(p);
    }

    let pt = digits_to_bits(plan.tail_digits.ceil() as u32);
    let mx = Float::with_val(pt, -x);
    let mut coef = if method == RieszMethod::Kummer1 { Float::with_val(pt, 1) } else { mx.clone() };
    let mut tsum = Float::new(pt);
    for i in 0..plan.tail.terms {
        tsum += Float::with_val(pt, &coef * tail.moment(i + plan.first_order));
        coef *= &mx;
        coef /= i + plan.first_order;
    }
    acc += &tsum;
    let value = Float::with_val(ctx.bits(), acc * &xm);

    let xf = x.to_f64().max(0.0);
    let trunc = xf * 10f64.powf(plan.tail.log10_truncation);
    let round = 10f64.powf(xf.max(1.0).log10() + (plan.cutoff as f64).log10() - plan.main_digits + 1.0);
    (value, err_float(trunc + round))
}

/// Small in-place helpers so the hot loop allocates nothing.
trait AssignExt {
    fn assign_recip_sq(&mut self, n: u64);
    fn assign_neg_product(&mut self, a: &Float, b: &Float);
}

impl AssignExt for Float {
    fn assign_recip_sq(&mut self, n: u64) {
        use rug::Assign;
        self.assign(n);
        self.square_mut();
        self.recip_mut();
    }

    fn assign_neg_product(&mut self, a: &Float, b: &Float) {
        use rug::ops::NegAssign;
        use rug::Assign;
        self.assign(a * b);
        self.neg_assign();
    }
}

/// Evaluates a Kummer form at every `x` (in parallel), sharing tail moments
/// between arguments with the same cutoff. Output order matches `xs`.
pub fn riesz_kummer_batch(
    xs: &[f64],
    method: RieszMethod,
    table: &MobiusTable,
    ctx: &PrecisionContext,
) -> Result<Vec<RieszSample>> {
    if method == RieszMethod::Series {
        return xs.par_iter().map(|&x| riesz_series(x, ctx)).collect();
    }
    for &x in xs {
        if !(x.is_finite() && x >= 0.0) {
            return Err(domain!("the Möbius forms of R need x ≥ 0, got {x}"));
        }
    }
    let plans: Vec<Option<KummerPlan>> = xs
        .iter()
        .map(|&x| if x == 0.0 { Ok(None) } else { kummer_plan(x, method, ctx).map(Some) })
        .collect::<Result<_>>()?;
    let live: Vec<&KummerPlan> = plans.iter().flatten().collect();
    if live.is_empty() {
        return Ok(xs.iter().map(|&x| RieszSample::zero(x, method, ctx)).collect());
    }
    let max_cutoff = live.iter().map(|p| p.cutoff).max().expect("nonempty");
    table.ensure_covers(max_cutoff, &format!("R({}) by {method}", xs.iter().cloned().fold(0.0, f64::max)))?;
    let max_order = live.iter().map(|p| p.tail.terms + p.first_order).max().expect("nonempty");
    let tail_digits = live.iter().map(|p| p.tail_digits).fold(0.0, f64::max);
    let cutoffs: Vec<u64> = live.iter().map(|p| p.cutoff).collect();
    let tails = TailSet::build(table, &cutoffs, max_order, digits_to_bits(tail_digits.ceil() as u32))?;

    Ok(xs
        .par_iter()
        .zip(plans.par_iter())
        .map(|(&x, plan)| match plan {
            None => RieszSample::zero(x, method, ctx),
            Some(plan) => {
                let xf = Float::with_val(64, x);
                let (value, err) = kummer_value(&xf, method, plan, table, tails.get(plan.cutoff), ctx);
                RieszSample { x, value, method, terms_used: plan.cutoff, err_estimate: err }
            }
        })
        .collect())
}

/// `R(x)` from `x Σ μ(n) n^-2 e^(-x/n²)`.
pub fn riesz_kummer1(x: f64, table: &MobiusTable, ctx: &PrecisionContext) -> Result<RieszSample> {
    Ok(riesz_kummer_batch(&[x], RieszMethod::Kummer1, table, ctx)?.remove(0))
}

/// `R(x)` from `x (6/π² + Σ μ(n) n^-2 (e^(-x/n²) - 1))`.
pub fn riesz_kummer2(x: f64, table: &MobiusTable, ctx: &PrecisionContext) -> Result<RieszSample> {
    Ok(riesz_kummer_batch(&[x], RieszMethod::Kummer2, table, ctx)?.remove(0))
}

/// Any of the three evaluators by tag.
pub fn riesz(x: f64, method: RieszMethod, table: &MobiusTable, ctx: &PrecisionContext) -> Result<RieszSample> {
    match method {
        RieszMethod::Series => riesz_series(x, ctx),
        _ => Ok(riesz_kummer_batch(&[x], method, table, ctx)?.remove(0)),
    }
}

/// Kummer2 at an arbitrary-precision argument (used to polish roots).
fn kummer2_at(x: &Float, table: &MobiusTable, ctx: &PrecisionContext) -> Result<Float> {
    let plan = kummer_plan(x.to_f64(), RieszMethod::Kummer2, ctx)?;
    let tail = MobiusTail::new(
        table,
        plan.cutoff,
        plan.tail.terms + plan.first_order,
        digits_to_bits(plan.tail_digits.ceil() as u32),
    )?;
    Ok(kummer_value(x, RieszMethod::Kummer2, &plan, table, &tail, ctx).0)
}

/// First positive zero of `R`, searched in [`FIRST_ZERO_BRACKET`].
pub fn first_zero(ctx: &PrecisionContext) -> Result<Float> {
    first_zero_in(FIRST_ZERO_BRACKET.0, FIRST_ZERO_BRACKET.1, None, ctx)
}

/// First zero of `R` in `[lo, hi]`.
///
/// Without `scan_step` the endpoints must bracket a sign change. With it,
/// the interval is walked from `lo` in steps of `scan_step` and the first
/// sign change found is used. The root is located by Brent's method in
/// double precision and then polished by secant steps at full precision.
pub fn first_zero_in(lo: f64, hi: f64, scan_step: Option<f64>, ctx: &PrecisionContext) -> Result<Float> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(domain!("zero search needs 0 < lo < hi, got [{lo}, {hi}]"));
    }
    let table = build_mobius(kummer_cutoff(hi * 1.01, RieszMethod::Kummer2, ctx))?;
    let f = |x: f64| -> Result<f64> { Ok(riesz_kummer2(x, &table, ctx)?.value.to_f64()) };

    let (a, b) = match scan_step {
        None => (lo, hi),
        Some(step) => {
            if step.is_nan() || step <= 0.0 {
                return Err(domain!("scan step must be positive, got {step}"));
            }
            let mut a = lo;
            let mut fa = f(a)?;
            loop {
                if a >= hi {
                    return Err(Error::Internal(format!("R has no sign change on [{lo}, {hi}]")));
                }
                let b = (a + step).min(hi);
                let fb = f(b)?;
                if fa == 0.0 || fa.signum() != fb.signum() {
                    break (a, b);
                }
                a = b;
                fa = fb;
            }
        }
    };
    let root = brent(f, a, b, 1e-15, 200)?;

    // secant polish
    let prec = ctx.bits() + 16;
    let mut x0 = Float::with_val(prec, root);
    let mut x1 = Float::with_val(prec, root * (1.0 + 1e-12));
    let mut f0 = kummer2_at(&x0, &table, ctx)?;
    let tol = Float::with_val(prec, Float::i_exp(1, -(ctx.bits() as i32)));
    for _ in 0..12 {
        let f1 = kummer2_at(&x1, &table, ctx)?;
        if f1.is_zero() {
            x0 = x1;
            break;
        }
        let slope = Float::with_val(prec, &f1 - &f0) / Float::with_val(prec, &x1 - &x0);
        if slope.is_zero() {
            break;
        }
        let dx = Float::with_val(prec, &f1 / &slope);
        let x2 = Float::with_val(prec, &x1 - &dx);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        if dx.abs() < tol {
            x0 = x1;
            break;
        }
    }
    if (x0.to_f64() - root).abs() > 1e-9 {
        return Err(Error::Internal(format!("secant polish drifted from {root} to {}", x0.to_f64())));
    }
    Ok(Float::with_val(ctx.bits(), x0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl FromStr for Spacing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            _ => Err(domain!("unknown spacing '{s}' (expected linear or log)")),
        }
    }
}

/// Maximum number of points in a sweep.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

/// Sample positions of a sweep.
///
/// Linear grids are `xmax·i/points` for `i = 1..=points`. Log grids run
/// geometrically from `xmin` to `xmax` inclusive; the default `xmin` is 1
/// when `xmax > 10` and `xmax/1000` otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepGrid {
    pub xmin: f64,
    pub xmax: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepGrid {
    pub fn new(xmax: f64, points: usize, spacing: Spacing) -> Self {
        let xmin = if xmax > 10.0 { 1.0 } else { xmax / 1000.0 };
        SweepGrid { xmin, xmax, points, spacing }
    }

    pub fn with_xmin(mut self, xmin: f64) -> Self {
        self.xmin = xmin;
        self
    }

    pub fn positions(&self) -> Result<Vec<f64>> {
        if self.points == 0 || self.points > MAX_SWEEP_POINTS {
            return Err(domain!("sweep needs 1..={MAX_SWEEP_POINTS} points, got {}", self.points));
        }
        if !(self.xmax > 0.0 && self.xmax.is_finite()) {
            return Err(domain!("sweep needs a positive finite xmax, got {}", self.xmax));
        }
        let n = self.points;
        Ok(match self.spacing {
            Spacing::Linear => (1..=n).map(|i| self.xmax * i as f64 / n as f64).collect(),
            Spacing::Log => {
                if !(self.xmin > 0.0 && self.xmin < self.xmax) {
                    return Err(domain!("log sweep needs 0 < xmin < xmax, got xmin = {}", self.xmin));
                }
                if n == 1 {
                    return Ok(vec![self.xmax]);
                }
                let (a, b) = (self.xmin.ln(), self.xmax.ln());
                (0..n)
                    .map(|i| if i + 1 == n { self.xmax } else { (a + (b - a) * i as f64 / (n - 1) as f64).exp() })
                    .collect()
            }
        })
    }
}

/// Kummer2 samples on a grid, in grid order.
pub fn riesz_sweep(grid: &SweepGrid, table: &MobiusTable, ctx: &PrecisionContext) -> Result<Vec<RieszSample>> {
    riesz_kummer_batch(&grid.positions()?, RieszMethod::Kummer2, table, ctx)
}

/// Table size that covers a Kummer evaluation (or sweep) up to `xmax`.
pub fn required_table(xmax: f64, method: RieszMethod, ctx: &PrecisionContext) -> u64 {
    kummer_cutoff(xmax, method, ctx)
}
