//! The Baez-Duarte sequence `c_k = Σ_{j=0}^k (-1)^j C(k,j) / ζ(2j+2)`.
//!
//! * Binomial form. The alternating sum cancels about `k·log10 2` digits.
//!   Each `1/ζ(2j+2)` is rounded once to a fixed-point integer with `P` fraction
//!   bits, and the sum is then formed exactly in integers. The only error is
//!   that initial rounding, at most `2^(k-P-1)`.
//! * Difference table. Forward differences `f_l^k = f_l^(k-1) - f_(l+1)^(k-1)`
//!   of the same fixed-point base, so `f_0^k` equals the binomial form bit
//!   for bit at a shared `P`.
//! * Möbius form `c_k = Σ μ(n) n^-2 (1 - 1/n²)^k`. It is truncated at `N` and the
//!   tail is recovered as `Σ_j (-1)^j C(k,j) T_(j+1)(N)`. The cutoff is
//!   `N ≥ 4·f·√(k+1)`, where `f` is the tail factor, so `k/N² < 1/16`.
//! * Spectral model `c_(k-1) ≈ k^(-3/4) Σ_i (a_i cos(γ_i ln k/2) - b_i sin(γ_i ln k/2))`
//!   over supplied zeros. This is an asymptotic model and carries no error bar.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Assign, Float, Integer};

use crate::error::{domain, resource, Error, Result};
use crate::precision::{digits_to_bits, err_float, PrecisionContext};
use crate::sieve::MobiusTable;
use crate::zeros::ZeroCoefficient;
use crate::zeta::{ladder_cutoff, plan_tail, MobiusTail, TailPlan, ZetaEvenTable};

/// Largest `k` for the binomial and difference-table forms.
pub const MAX_BINOMIAL_INDEX: u64 = 2000;

/// Smallest `k` accepted by the spectral model.
pub const MIN_SPECTRAL_INDEX: u64 = 100;

/// Records per block in Möbius sweeps; powers are recomputed at block starts.
const SWEEP_BLOCK: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CkMethod {
    Binomial,
    Moebius,
    DiffTable,
    Spectral,
}

impl CkMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CkMethod::Binomial => "binomial",
            CkMethod::Moebius => "moebius",
            CkMethod::DiffTable => "difftable",
            CkMethod::Spectral => "spectral",
        }
    }
}

impl fmt::Display for CkMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CkMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binomial" => Ok(CkMethod::Binomial),
            "moebius" => Ok(CkMethod::Moebius),
            "difftable" => Ok(CkMethod::DiffTable),
            "spectral" => Ok(CkMethod::Spectral),
            _ => Err(domain!("unknown c_k method '{s}' (expected binomial, moebius, difftable or spectral)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CkRecord {
    pub k: u64,
    pub value: Float,
    pub method: CkMethod,
    /// Decimal digits carried internally.
    pub precision_digits: u32,
    /// Absolute error estimate; infinite for the spectral model.
    pub err_estimate: Float,
}

/// Internal digits for the binomial form at index `k`: at least
/// `⌈k·log10 k⌉ + 30`, and never less than the context's working digits plus
/// the `k·log10 2` digits lost to cancellation.
pub fn binomial_digits(k: u64, ctx: &PrecisionContext) -> u32 {
    let kf = k as f64;
    let rule = (kf * kf.max(2.0).log10()).ceil() + 30.0;
    let floor = ctx.working_digits() as f64 + (kf * std::f64::consts::LOG10_2).ceil() + 5.0;
    rule.max(floor) as u32
}

fn check_binomial_index(k: u64) -> Result<()> {
    if k > MAX_BINOMIAL_INDEX {
        return Err(resource!(
            "the binomial form at k = {k} needs about {:.0} digits; use the moebius method",
            k as f64 * (k as f64).log10()
        ));
    }
    Ok(())
}

/// `round(2^frac_bits / ζ(2j+2))` for `0 ≤ j ≤ kmax`.
fn fixed_point_base(kmax: u64, frac_bits: u32) -> Result<Vec<Integer>> {
    let zeta = ZetaEvenTable::new(kmax as u32 + 1, frac_bits + 64)?;
    Ok((0..=kmax as u32)
        .map(|j| {
            let scaled = Float::with_val(frac_bits + 64, zeta.f(j) << frac_bits);
            scaled.to_integer().expect("finite")
        })
        .collect())
}

fn binomial_fixed(k: u64, base: &[Integer]) -> Integer {
    let mut c = Integer::from(1);
    let mut acc = Integer::new();
    for j in 0..=k {
        if j % 2 == 0 {
            acc += &c * &base[j as usize];
        } else {
            acc -= &c * &base[j as usize];
        }
        c *= k - j;
        c /= j + 1;
    }
    acc
}

fn fixed_to_float(v: &Integer, frac_bits: u32, prec: u32) -> Float {
    Float::with_val(prec, v) >> frac_bits
}

/// Bound on the error a fixed-point base with `frac_bits` carries into `c_k`.
fn fixed_rounding_bound(k: u64, frac_bits: u32) -> Float {
    err_float(Float::i_exp(1, k as i32 - frac_bits as i32 - 1))
}

/// `c_k` by the binomial form at an explicit number of internal digits.
///
/// No error estimate beyond the fixed-point rounding bound is attached; use
/// [`ck_binomial`] for the rerun-based estimate.
pub fn ck_binomial_with_digits(k: u64, digits: u32, ctx: &PrecisionContext) -> Result<CkRecord> {
    check_binomial_index(k)?;
    let bits = digits_to_bits(digits);
    let base = fixed_point_base(k, bits)?;
    let v = binomial_fixed(k, &base);
    Ok(CkRecord {
        k,
        value: fixed_to_float(&v, bits, ctx.bits()),
        method: CkMethod::Binomial,
        precision_digits: digits,
        err_estimate: fixed_rounding_bound(k, bits),
    })
}

/// `c_k` by the binomial form. The error estimate is the difference to a
/// rerun with 20 more digits, plus the rerun's own rounding bound.
pub fn ck_binomial(k: u64, ctx: &PrecisionContext) -> Result<CkRecord> {
    let digits = binomial_digits(k, ctx);
    let mut rec = ck_binomial_with_digits(k, digits, ctx)?;
    let hi_bits = digits_to_bits(digits + 20);
    let hi = binomial_fixed(k, &fixed_point_base(k, hi_bits)?);
    let hi = fixed_to_float(&hi, hi_bits, hi_bits);
    let diff = Float::with_val(hi_bits, &hi - &rec.value).abs();
    rec.err_estimate =
        err_float(diff) + fixed_rounding_bound(k, hi_bits) + err_float(Float::i_exp(1, -(ctx.bits() as i32)));
    Ok(rec)
}

/// Forward-difference triangle of `f_l = 1/ζ(2l+2)` in fixed point.
///
/// Only the base row and the diagonal `f_0^k = c_k` are stored; other rows
/// are rebuilt on demand by [`DiffTable::row`].
#[derive(Clone, Debug)]
pub struct DiffTable {
    digits: u32,
    frac_bits: u32,
    base: Vec<Integer>,
    diagonal: Vec<Integer>,
}

/// Difference table up to `kmax` at the binomial precision for `kmax`.
pub fn ck_difftable(kmax: u64, ctx: &PrecisionContext) -> Result<DiffTable> {
    DiffTable::with_digits(kmax, binomial_digits(kmax, ctx))
}

impl DiffTable {
    pub fn with_digits(kmax: u64, digits: u32) -> Result<Self> {
        check_binomial_index(kmax)?;
        let frac_bits = digits_to_bits(digits);
        let base = fixed_point_base(kmax, frac_bits)?;
        let mut row = base.clone();
        let mut diagonal = Vec::with_capacity(base.len());
        diagonal.push(row[0].clone());
        for len in (1..row.len()).rev() {
            for l in 0..len {
                let (a, b) = row.split_at_mut(l + 1);
                a[l] -= &b[0];
            }
            row.truncate(len);
            diagonal.push(row[0].clone());
        }
        Ok(DiffTable { digits, frac_bits, base, diagonal })
    }

    pub fn kmax(&self) -> u64 {
        (self.base.len() - 1) as u64
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    /// `f_l^0 = 1/ζ(2l+2)` as a float at `prec`.
    pub fn base(&self, l: u64, prec: u32) -> Float {
        fixed_to_float(&self.base[l as usize], self.frac_bits, prec)
    }

    /// Fixed-point `c_k = f_0^k` (scaled by `2^frac_bits`).
    pub fn diagonal_fixed(&self, k: u64) -> &Integer {
        &self.diagonal[k as usize]
    }

    /// The binomial sum over this table's base, for an exact comparison with
    /// [`diagonal_fixed`](Self::diagonal_fixed).
    pub fn binomial_fixed(&self, k: u64) -> Integer {
        binomial_fixed(k, &self.base[..=k as usize])
    }

    /// Row `k`: `f_l^k` for `0 ≤ l ≤ kmax - k`, as floats at `prec`.
    pub fn row(&self, k: u64, prec: u32) -> Vec<Float> {
        let mut row = self.base.clone();
        for _ in 0..k {
            for l in 0..row.len() - 1 {
                let (a, b) = row.split_at_mut(l + 1);
                a[l] -= &b[0];
            }
            row.pop();
        }
        row.iter().map(|v| fixed_to_float(v, self.frac_bits, prec)).collect()
    }

    /// `f_l^k`.
    pub fn entry(&self, l: u64, k: u64, prec: u32) -> Float {
        let mut c = Integer::from(1);
        let mut acc = Integer::new();
        for j in 0..=k {
            let t = Integer::from(&c * &self.base[(l + j) as usize]);
            if j % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
            c *= k - j;
            c /= j + 1;
        }
        fixed_to_float(&acc, self.frac_bits, prec)
    }

    pub fn record(&self, k: u64, ctx: &PrecisionContext) -> CkRecord {
        CkRecord {
            k,
            value: fixed_to_float(&self.diagonal[k as usize], self.frac_bits, ctx.bits()),
            method: CkMethod::DiffTable,
            precision_digits: self.digits,
            err_estimate: fixed_rounding_bound(k, self.frac_bits) + err_float(Float::i_exp(1, -(ctx.bits() as i32))),
        }
    }
}

/// Möbius cutoff for index `k`.
pub fn moebius_cutoff(k: u64, ctx: &PrecisionContext) -> u64 {
    let n = (4.0 * ((k + 1) as f64).sqrt() * ctx.series_tail_factor()).ceil() as u64;
    ladder_cutoff(n.max(16))
}

/// Plan for the tail `Σ_{j≥0} (-1)^j C(k,j) T_(j+1)`.
fn binomial_tail_plan(k: u64, cutoff: u64, log10_target: f64) -> Result<TailPlan> {
    plan_tail(
        cutoff,
        1,
        0.0,
        |i| if (i as u64) < k { ((k - i as u64) as f64 / (i + 1) as f64).log10() } else { f64::NEG_INFINITY },
        log10_target,
    )
}

/// `Σ_{j<terms} sign·(±1)^j C(k,j) T_(j+order)` at precision `prec`.
pub(crate) fn binomial_tail_sum(
    k: u64,
    terms: u32,
    order: u32,
    alternate: bool,
    tail: &MobiusTail,
    prec: u32,
) -> Float {
    let mut c = Float::with_val(prec, 1);
    let mut acc = Float::new(prec);
    for j in 0..terms {
        let t = Float::with_val(prec, &c * tail.moment(j + order));
        if alternate && j % 2 == 1 {
            acc -= t;
        } else {
            acc += t;
        }
        if (j as u64) >= k {
            break;
        }
        c *= k - j as u64;
        c /= j + 1;
    }
    acc
}

/// Squarefree `n ≤ N` with `1/n²`, `1 - 1/n²` and `(1 - 1/n²)^stride`.
pub(crate) struct MoebiusTerms {
    pub mu: Vec<i8>,
    pub inv_sq: Vec<Float>,
    pub q: Vec<Float>,
    pub q_stride: Vec<Float>,
    pub prec: u32,
}

impl MoebiusTerms {
    pub fn new(table: &MobiusTable, cutoff: u64, stride: u64, prec: u32) -> Self {
        let (mut mu, mut inv_sq, mut q, mut q_stride) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (n, m) in table.squarefree(cutoff) {
            let inv = Float::with_val(prec, Float::with_val(prec, n).square().recip_ref());
            let qn = Float::with_val(prec, 1 - &inv);
            q_stride.push(pow_u64(&qn, stride, prec));
            mu.push(m);
            inv_sq.push(inv);
            q.push(qn);
        }
        MoebiusTerms { mu, inv_sq, q, q_stride, prec }
    }

    /// `q_n^e` for every `n`.
    pub fn powers(&self, e: u64) -> Vec<Float> {
        self.q.iter().map(|q| pow_u64(q, e, self.prec)).collect()
    }

    pub fn advance(&self, powers: &mut [Float]) {
        for (p, s) in powers.iter_mut().zip(&self.q_stride) {
            *p *= s;
        }
    }

    /// `Σ μ(n) w_n p_n` with `w = 1/n²`.
    pub fn weighted_sum(&self, powers: &[Float]) -> Float {
        let mut acc = Float::new(self.prec);
        let mut t = Float::new(self.prec);
        for ((p, w), &m) in powers.iter().zip(&self.inv_sq).zip(&self.mu) {
            t.assign(p * w);
            if m > 0 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        acc
    }
}

pub(crate) fn pow_u64(q: &Float, e: u64, prec: u32) -> Float {
    if e <= u32::MAX as u64 {
        Float::with_val(prec, q.pow(e as u32))
    } else {
        Float::with_val(prec, q.pow(&Integer::from(e)))
    }
}

struct MoebiusPlan {
    cutoff: u64,
    tail: TailPlan,
    main_digits: f64,
    tail_digits: f64,
}

fn moebius_plan(kmax: u64, cutoff: u64, extra_main: f64, ctx: &PrecisionContext) -> Result<MoebiusPlan> {
    let w = ctx.working_digits() as f64;
    let tail = binomial_tail_plan(kmax, cutoff, -w - 1.0)?;
    let ln = (cutoff as f64).log10();
    Ok(MoebiusPlan {
        cutoff,
        tail,
        main_digits: w + ln + 3.0 + extra_main,
        tail_digits: w + tail.extra_digits + ln + 5.0,
    })
}

fn moebius_err(plan: &MoebiusPlan) -> Float {
    let trunc = 10f64.powf(plan.tail.log10_truncation);
    let round = 10f64.powf((plan.cutoff as f64).log10() - plan.main_digits + 1.0);
    err_float(trunc + round)
}

/// `c_k` by the Möbius form with tail correction.
pub fn ck_moebius(k: u64, table: &MobiusTable, ctx: &PrecisionContext) -> Result<CkRecord> {
    let plan = moebius_plan(k, moebius_cutoff(k, ctx), 0.0, ctx)?;
    table.ensure_covers(plan.cutoff, &format!("c_{k} by the Möbius form"))?;
    let tail =
        MobiusTail::new(table, plan.cutoff, plan.tail.terms + 1, digits_to_bits(plan.tail_digits.ceil() as u32))?;
    let prec = digits_to_bits(plan.main_digits.ceil() as u32);
    let terms = MoebiusTerms::new(table, plan.cutoff, 1, prec);
    let mut v = terms.weighted_sum(&terms.powers(k));
    v += binomial_tail_sum(k, plan.tail.terms, 1, true, &tail, tail_prec(&plan));
    Ok(CkRecord {
        k,
        value: Float::with_val(ctx.bits(), v),
        method: CkMethod::Moebius,
        precision_digits: plan.main_digits.ceil() as u32,
        err_estimate: moebius_err(&plan),
    })
}

fn tail_prec(plan: &MoebiusPlan) -> u32 {
    digits_to_bits(plan.tail_digits.ceil() as u32)
}

/// Möbius-form `c_k` at each index in `ks`. The indices may be in any order
/// and are evaluated independently in parallel; one cutoff (that of the
/// largest index) serves all of them.
pub fn ck_moebius_batch(ks: &[u64], table: &MobiusTable, ctx: &PrecisionContext) -> Result<Vec<CkRecord>> {
    let Some(&kmax) = ks.iter().max() else { return Ok(Vec::new()) };
    let plan = moebius_plan(kmax, moebius_cutoff(kmax, ctx), 0.0, ctx)?;
    table.ensure_covers(plan.cutoff, &format!("c_{kmax} by the Möbius form"))?;
    let tail = MobiusTail::new(table, plan.cutoff, plan.tail.terms + 1, tail_prec(&plan))?;
    let prec = digits_to_bits(plan.main_digits.ceil() as u32);
    let terms = MoebiusTerms::new(table, plan.cutoff, 1, prec);
    let err = moebius_err(&plan);
    Ok(ks
        .par_iter()
        .map(|&k| {
            let mut v = terms.weighted_sum(&terms.powers(k));
            v += binomial_tail_sum(k, plan.tail.terms, 1, true, &tail, tail_prec(&plan));
            CkRecord {
                k,
                value: Float::with_val(ctx.bits(), v),
                method: CkMethod::Moebius,
                precision_digits: plan.main_digits.ceil() as u32,
                err_estimate: err.clone(),
            }
        })
        .collect())
}

/// The spectral model for `c_(k-1)` from the supplied zero coefficients.
/// The returned record has index `k - 1` and an infinite error estimate.
pub fn ck_spectral(k: u64, coeffs: &[ZeroCoefficient]) -> Result<CkRecord> {
    if coeffs.is_empty() {
        return Err(domain!("the spectral model needs at least one zero coefficient"));
    }
    if k < MIN_SPECTRAL_INDEX {
        return Err(domain!("the spectral model is asymptotic; k = {k} is below {MIN_SPECTRAL_INDEX}"));
    }
    if coeffs.windows(2).any(|w| w[0].gamma >= w[1].gamma) {
        return Err(domain!("zero coefficients must be sorted by ordinate"));
    }
    let prec = coeffs.iter().map(|c| c.a.prec()).min().expect("nonempty");
    let ln_k = Float::with_val(prec, k).ln();
    let mut acc = Float::new(prec);
    for c in coeffs {
        let phase = Float::with_val(prec, &ln_k * &c.gamma) / 2u32;
        let (s, co) = phase.sin_cos(Float::new(prec));
        acc += Float::with_val(prec, &c.a * &co);
        acc -= Float::with_val(prec, &c.b * &s);
    }
    let scale = Float::with_val(prec, k).pow(Float::with_val(prec, -0.75));
    Ok(CkRecord {
        k: k - 1,
        value: acc * scale,
        method: CkMethod::Spectral,
        precision_digits: (prec as f64 / std::f64::consts::LOG2_10).floor() as u32,
        err_estimate: err_float(f64::INFINITY),
    })
}

/// `c_k` for `k = 0, stride, 2·stride, … ≤ kmax`, in index order.
///
/// `binomial` and `difftable` share one fixed-point base at the precision
/// for `kmax` (so `kmax ≤ 2000`). `moebius` uses one cutoff for `kmax` and
/// walks the powers `(1 - 1/n²)^k` multiplicatively inside fixed blocks of
/// 256 records. Each block starts from freshly computed powers, so the output
/// does not depend on how blocks are scheduled across threads.
pub fn ck_sweep(
    kmax: u64,
    method: CkMethod,
    stride: u64,
    table: &MobiusTable,
    ctx: &PrecisionContext,
) -> Result<Vec<CkRecord>> {
    if stride == 0 {
        return Err(domain!("sweep stride must be positive"));
    }
    let ks: Vec<u64> = (0..=kmax).step_by(stride as usize).collect();
    match method {
        CkMethod::Binomial => {
            check_binomial_index(kmax)?;
            let digits = binomial_digits(kmax, ctx);
            let bits = digits_to_bits(digits);
            let hi_bits = digits_to_bits(digits + 20);
            let base = fixed_point_base(kmax, bits)?;
            let hi_base = fixed_point_base(kmax, hi_bits)?;
            Ok(ks
                .par_iter()
                .map(|&k| {
                    let v = fixed_to_float(&binomial_fixed(k, &base), bits, hi_bits);
                    let hi = fixed_to_float(&binomial_fixed(k, &hi_base), hi_bits, hi_bits);
                    let diff = Float::with_val(hi_bits, &hi - &v).abs();
                    CkRecord {
                        k,
                        value: Float::with_val(ctx.bits(), &v),
                        method: CkMethod::Binomial,
                        precision_digits: digits,
                        err_estimate: err_float(diff)
                            + fixed_rounding_bound(k, hi_bits)
                            + err_float(Float::i_exp(1, -(ctx.bits() as i32))),
                    }
                })
                .collect())
        }
        CkMethod::DiffTable => {
            let t = ck_difftable(kmax, ctx)?;
            Ok(ks.iter().map(|&k| t.record(k, ctx)).collect())
        }
        CkMethod::Moebius => moebius_sweep(&ks, stride, table, ctx),
        CkMethod::Spectral => Err(domain!("spectral sweeps need zero coefficients; use ck_spectral per index")),
    }
}

/// Möbius-form `c_k` for `k = kmin, kmin + stride, … ≤ kmax`, walked in
/// blocks as in [`ck_sweep`].
pub fn ck_moebius_range(
    kmin: u64,
    kmax: u64,
    stride: u64,
    table: &MobiusTable,
    ctx: &PrecisionContext,
) -> Result<Vec<CkRecord>> {
    if stride == 0 {
        return Err(domain!("sweep stride must be positive"));
    }
    if kmin > kmax {
        return Err(domain!("empty index range [{kmin}, {kmax}]"));
    }
    let ks: Vec<u64> = (kmin..=kmax).step_by(stride as usize).collect();
    moebius_sweep(&ks, stride, table, ctx)
}

fn moebius_sweep(ks: &[u64], stride: u64, table: &MobiusTable, ctx: &PrecisionContext) -> Result<Vec<CkRecord>> {
    let kmax = *ks.last().expect("nonempty index list");
    // one rounding per multiplicative step inside a block
    let extra = (SWEEP_BLOCK as f64).log10() + 1.0;
    let plan = moebius_plan(kmax, moebius_cutoff(kmax, ctx), extra, ctx)?;
    table.ensure_covers(plan.cutoff, &format!("c_k sweep to {kmax}"))?;
    let tp = tail_prec(&plan);
    let tail = MobiusTail::new(table, plan.cutoff, plan.tail.terms + 1, tp)?;
    let prec = digits_to_bits(plan.main_digits.ceil() as u32);
    let terms = MoebiusTerms::new(table, plan.cutoff, stride, prec);
    let err = moebius_err(&plan);

    let blocks: Vec<Vec<CkRecord>> = ks
        .par_chunks(SWEEP_BLOCK)
        .map(|chunk| {
            let mut powers = terms.powers(chunk[0]);
            let mut out = Vec::with_capacity(chunk.len());
            for (i, &k) in chunk.iter().enumerate() {
                if i > 0 {
                    terms.advance(&mut powers);
                }
                let mut v = terms.weighted_sum(&powers);
                v += binomial_tail_sum(k, plan.tail.terms, 1, true, &tail, tp);
                out.push(CkRecord {
                    k,
                    value: Float::with_val(ctx.bits(), v),
                    method: CkMethod::Moebius,
                    precision_digits: plan.main_digits.ceil() as u32,
                    err_estimate: err.clone(),
                });
            }
            out
        })
        .collect();
    Ok(blocks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::build_mobius;
    use proptest::prelude::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30).unwrap()
    }

    fn diff(a: &CkRecord, b: &CkRecord) -> f64 {
        Float::with_val(256, &a.value - &b.value).abs().to_f64()
    }

    #[test]
    fn first_values() {
        let c = ctx();
        let c0 = ck_binomial(0, &c).unwrap();
        assert!((c0.value.to_f64() - 0.607_927_101_854_026_6).abs() < 1e-15);
        let c1 = ck_binomial(1, &c).unwrap();
        // 6/π² - 90/π⁴
        let pi = std::f64::consts::PI;
        assert!((c1.value.to_f64() - (6.0 / pi.powi(2) - 90.0 / pi.powi(4))).abs() < 1e-15);
        assert!((c1.value.to_f64() + 0.316_011_301_067_563_5).abs() < 1e-15);
    }

    #[test]
    fn difftable_equals_binomial_bit_for_bit() {
        let c = ctx();
        let t = ck_difftable(64, &c).unwrap();
        for k in 0..=64 {
            assert_eq!(t.diagonal_fixed(k), &t.binomial_fixed(k), "k = {k}");
            let b = ck_binomial_with_digits(k, t.digits(), &c).unwrap();
            assert_eq!(b.value, t.record(k, &c).value, "k = {k}");
        }
        let p = 256;
        assert_eq!(t.base(0, p), t.entry(0, 0, p));
        let row1 = t.row(1, p);
        assert_eq!(row1[0], t.entry(0, 1, p));
        assert_eq!(row1[3], t.entry(3, 1, p));
        assert_eq!(t.row(64, p).len(), 1);
    }

    #[test]
    fn difftable_base_is_inverse_zeta() {
        let c = ctx();
        let t = ck_difftable(4, &c).unwrap();
        let pi = std::f64::consts::PI;
        assert!((t.base(0, 128).to_f64() - 6.0 / pi.powi(2)).abs() < 1e-16);
        assert!((t.base(1, 128).to_f64() - 90.0 / pi.powi(4)).abs() < 1e-15);
    }

    #[test]
    fn binomial_and_moebius_agree() {
        let c = ctx();
        let table = build_mobius(moebius_cutoff(1024, &c)).unwrap();
        for k in (0..=64).chain([128, 256, 1024]) {
            let b = ck_binomial(k, &c).unwrap();
            let m = ck_moebius(k, &table, &c).unwrap();
            assert!(diff(&b, &m) < 1e-30, "k = {k}: {}", diff(&b, &m));
            assert!(diff(&b, &m) <= b.err_estimate.to_f64() + m.err_estimate.to_f64(), "k = {k}");
        }
    }

    #[test]
    fn moebius_tail_correction_is_cutoff_independent() {
        let c = ctx();
        let c4 = PrecisionContext::with_options(30, 10, 4.0).unwrap();
        let table = build_mobius(moebius_cutoff(20_000, &c4)).unwrap();
        for k in [0u64, 7, 500, 20_000] {
            let a = ck_moebius(k, &table, &c).unwrap();
            let b = ck_moebius(k, &table, &c4).unwrap();
            assert!(diff(&a, &b) < 1e-35, "k = {k}");
        }
    }

    #[test]
    fn moebius_value_at_large_k_has_expected_scale() {
        let c = ctx();
        let k = 100_000u64;
        let table = build_mobius(moebius_cutoff(k, &c)).unwrap();
        let v = ck_moebius(k, &table, &c).unwrap().value.to_f64().abs();
        // |c_k|·k^(3/4) ≲ modulus of the first spectral coefficient (≈ 7.8e-5)
        let scaled = v * (k as f64).powf(0.75);
        assert!(scaled < 3.0 * 7.8e-5, "{scaled}");
    }

    #[test]
    fn sweeps_agree_and_are_ordered() {
        let c = ctx();
        let table = build_mobius(moebius_cutoff(64, &c)).unwrap();
        let b = ck_sweep(64, CkMethod::Binomial, 1, &table, &c).unwrap();
        let d = ck_sweep(64, CkMethod::DiffTable, 1, &table, &c).unwrap();
        let m = ck_sweep(64, CkMethod::Moebius, 1, &table, &c).unwrap();
        assert_eq!(b.len(), 65);
        for i in 0..=64 {
            assert_eq!(b[i].k, i as u64);
            assert_eq!(b[i].value, d[i].value);
            assert!(diff(&b[i], &m[i]) < 1e-20);
        }
        let two = ck_sweep(1, CkMethod::Moebius, 1, &table, &c).unwrap();
        assert_eq!(two.len(), 2);
        assert!((two[1].value.to_f64() + 0.316_011_3).abs() < 1e-7);
    }

    #[test]
    fn strided_moebius_sweep_matches_pointwise() {
        let c = ctx();
        let kmax = 3000;
        let table = build_mobius(moebius_cutoff(kmax, &c)).unwrap();
        let s = ck_sweep(kmax, CkMethod::Moebius, 7, &table, &c).unwrap();
        assert_eq!(s.last().unwrap().k, 2996);
        for r in s.iter().step_by(60) {
            let p = ck_moebius(r.k, &table, &c).unwrap();
            assert!(diff(r, &p) < 1e-35, "k = {}", r.k);
        }
    }

    #[test]
    fn moebius_range_matches_pointwise() {
        let c = ctx();
        let table = build_mobius(moebius_cutoff(2000, &c)).unwrap();
        let r = ck_moebius_range(1500, 2000, 5, &table, &c).unwrap();
        assert_eq!((r[0].k, r.last().unwrap().k, r.len()), (1500, 2000, 101));
        for rec in r.iter().step_by(25) {
            assert!(diff(rec, &ck_moebius(rec.k, &table, &c).unwrap()) < 1e-35);
        }
        assert!(ck_moebius_range(5, 4, 1, &table, &c).is_err());
    }

    #[test]
    fn sweep_is_thread_count_independent() {
        let c = ctx();
        let table = build_mobius(moebius_cutoff(5000, &c)).unwrap();
        let a = ck_sweep(5000, CkMethod::Moebius, 3, &table, &c).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let b = pool.install(|| ck_sweep(5000, CkMethod::Moebius, 3, &table, &c).unwrap());
        assert!(a.iter().zip(&b).all(|(x, y)| x.value == y.value));
    }

    #[test]
    fn index_limits() {
        let c = ctx();
        let table = build_mobius(100).unwrap();
        assert!(matches!(ck_binomial(2001, &c), Err(Error::Resource(_))));
        assert!(matches!(ck_moebius(100_000, &table, &c), Err(Error::Domain(_))));
        assert!(matches!(ck_spectral(500, &[]), Err(Error::Domain(_))));
        assert!(ck_sweep(10, CkMethod::Moebius, 0, &table, &c).is_err());
        assert!(ck_sweep(10, CkMethod::Spectral, 1, &table, &c).is_err());
    }

    #[test]
    fn binomial_error_estimate_is_consistent_with_rerun() {
        let c = ctx();
        for k in [10u64, 100, 300] {
            let a = ck_binomial(k, &c).unwrap();
            let b = ck_binomial(k, &c.elevated(20)).unwrap();
            assert!(diff(&a, &b) <= a.err_estimate.to_f64(), "k = {k}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn moebius_values_are_bounded(k in 0u64..20_000) {
            let c = ctx();
            let table = build_mobius(moebius_cutoff(20_000, &c)).unwrap();
            let v = ck_moebius(k, &table, &c).unwrap();
            prop_assert!(v.value.to_f64().abs() <= std::f64::consts::PI.powi(2) / 6.0);
        }

        #[test]
        fn difference_recurrence_holds(l in 0u64..20, k in 1u64..20) {
            let t = ck_difftable(40, &ctx()).unwrap();
            let p = 512;
            let lhs = t.entry(l, k, p);
            let rhs = Float::with_val(p, t.entry(l, k - 1, p) - t.entry(l + 1, k - 1, p));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
