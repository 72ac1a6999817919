//! Identities tying `R` to `c_k`, each checked by evaluating both sides
//! through independent routes.

use rug::float::Constant;
use rug::Float;

use crate::analysis::quad::{adaptive, GaussLegendre};
use crate::baez::{ck_binomial, ck_difftable, MAX_BINOMIAL_INDEX};
use crate::error::{domain, Result};
use crate::precision::{digits_to_bits, PrecisionContext};
use crate::riesz::{kummer_cutoff, riesz_kummer_batch, riesz_series, RieszMethod};
use crate::sieve::build_mobius;
use crate::zeta::{ladder_cutoff, plan_tail, zeta_and_deriv_real, MobiusTail, ZetaEvenTable};

/// Residual tolerance of the exact identities. Truncations are sized so
/// that their bounds sit below it.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

/// Bound on `|c_k|` and on `|R(k)/k|`, both at most `Σ 1/n² = π²/6`.
const COEF_BOUND: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// Both sides of an identity and how far apart they are.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub lhs: Float,
    pub rhs: Float,
    /// `|lhs - rhs|`, relative where the operation says so.
    pub residual: Float,
    /// Bound on the truncated part of a series side, on the residual's scale.
    pub tail_bound: f64,
    /// Terms summed on the truncated side.
    pub terms: u64,
}

/// `log10` of a bound on `Σ_{k>K} x^k/k!`.
fn log10_exp_tail(x: f64, kmax: u64) -> f64 {
    let k1 = kmax + 1;
    if (k1 + 1) as f64 <= x {
        return f64::INFINITY;
    }
    let log_term: f64 = (1..=k1).map(|k| (x / k as f64).log10()).sum();
    log_term - (1.0 - x / (k1 + 1) as f64).log10()
}

/// Smallest `K` with `log10_exp_tail(x, K) < target`.
fn exp_series_terms(x: f64, log10_target: f64) -> u64 {
    let mut k = x.ceil() as u64;
    while log10_exp_tail(x, k) >= log10_target {
        k += 1;
    }
    k
}

/// `e^x R(x)/x` with `R` from the second Kummer form.
fn exp_riesz_over_x(x: f64, ctx: &PrecisionContext) -> Result<Float> {
    let table = build_mobius(kummer_cutoff(x, RieszMethod::Kummer2, ctx))?;
    let r = riesz_kummer_batch(&[x], RieszMethod::Kummer2, &table, ctx)?.remove(0);
    let p = ctx.bits();
    Ok(Float::with_val(p, x).exp() * r.value / x)
}

fn check_positive(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(domain!("argument must be finite and positive, got {x}"))
    }
}

fn relative(lhs: &Float, rhs: &Float) -> Float {
    let p = lhs.prec().max(rhs.prec());
    let d = Float::with_val(p, lhs - rhs).abs();
    d / (Float::with_val(p, rhs.abs_ref()) + 1e-30)
}

/// `Σ_{k≤kmax} c_k x^k/k!` against `e^x R(x)/x`; the residual is relative.
///
/// `c_k` comes from the difference table and `R` from the second Kummer
/// form. Fails if the truncation bound `(π²/6) Σ_{k>kmax} x^k/k!` exceeds
/// [`IDENTITY_TOLERANCE`] relative to the right side.
pub fn verify_generating_identity(x: f64, kmax: u64, ctx: &PrecisionContext) -> Result<IdentityCheck> {
    check_positive(x)?;
    let rhs = exp_riesz_over_x(x, ctx)?;
    let scale = rhs.to_f64().abs() + 1e-30;
    let tail_bound = COEF_BOUND * 10f64.powf(log10_exp_tail(x, kmax)) / scale;
    if tail_bound.is_nan() || tail_bound >= IDENTITY_TOLERANCE {
        return Err(domain!(
            "kmax = {kmax} leaves a relative tail bound of {tail_bound:e} at x = {x}; need at least {}",
            exp_series_terms(x, (IDENTITY_TOLERANCE * scale / COEF_BOUND).log10())
        ));
    }
    let table = ck_difftable(kmax, ctx)?;
    let p = ctx.bits();
    let xf = Float::with_val(p, x);
    let mut w = Float::with_val(p, 1);
    let mut lhs = Float::new(p);
    for k in 0..=kmax {
        lhs += Float::with_val(p, &w * &table.record(k, ctx).value);
        w *= &xf;
        w /= k + 1;
    }
    let residual = relative(&lhs, &rhs);
    Ok(IdentityCheck { lhs, rhs, residual, tail_bound, terms: kmax + 1 })
}

/// `Σ_{k≥1} 2^-k / ζ(2k)`, the value of `Σ (-1)^k c_k`.
pub fn alternating_sum(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.bits() + 16;
    // 1/ζ(2k) < 1, so the tail after K terms is below 2^-K
    let terms = p + 8;
    let zeta = ZetaEvenTable::new(terms, p)?;
    let mut acc = Float::new(p);
    for k in (1..=terms).rev() {
        acc += Float::with_val(p, zeta.inverse(k) >> k);
    }
    Ok(Float::with_val(ctx.bits(), acc))
}

/// Gauss–Legendre orders for the Abel quadrature.
const ABEL_RULE: (usize, usize) = (20, 40);
const ABEL_MAX_DEPTH: u32 = 12;

/// `(1 - 2^-m) ζ′(x)/ζ(x)²` on `[2m, 2m + 2)`.
pub fn abel_integrand(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = x.prec();
    let m = (x.to_f64() / 2.0).floor() as i32;
    let (z, dz) = zeta_and_deriv_real(x, ctx)?;
    let w = Float::with_val(p, 1) - Float::with_val(p, Float::i_exp(1, -m));
    Ok(w * dz.value / z.value.square())
}

/// Bound on `∫_X^∞ |ζ′/ζ²|`: with `ζ ≥ 1` it is at most
/// `Σ_{n≥2} ∫_X^∞ ln n · n^-x dx = ζ(X) - 1 ≤ 2^-X (1 + 2/(X-1))`.
/// The `1 - 2^-m` weight only shrinks it.
fn abel_tail_bound(x: f64) -> f64 {
    2f64.powf(-x) * (1.0 + 2.0 / (x - 1.0))
}

/// `1 + ∫_2^∞ (1 - 2^-⌊x/2⌋) ζ′(x)/ζ(x)² dx` by adaptive Gauss–Legendre
/// on each interval `[2m, 2m + 2]`, stopped once the remaining tail is below
/// `10^-(working digits + 2)`. Returns the value and the accumulated
/// quadrature disagreement plus the tail bound.
///
/// The integrand is evaluated with 10 extra digits so that its rounding
/// noise stays well below the per-interval tolerance.
pub fn abel_integral(ctx: &PrecisionContext) -> Result<(Float, f64)> {
    let w = ctx.working_digits() as f64;
    let hi = ctx.elevated(10);
    let p = hi.bits();
    let coarse = GaussLegendre::new(ABEL_RULE.0, p);
    let fine = GaussLegendre::new(ABEL_RULE.1, p);
    let mut intervals = 1u32;
    while abel_tail_bound(2.0 * (intervals + 1) as f64) >= 10f64.powf(-(w + 2.0)) {
        intervals += 1;
    }
    let tol = Float::with_val(p, 10f64.powf(-(w + 2.0))) / intervals;
    let mut acc = Float::with_val(p, 1);
    let mut disagreement = 0.0;
    let mut f = |x: &Float| abel_integrand(x, &hi);
    for m in 1..=intervals {
        let a = Float::with_val(p, 2 * m);
        let b = Float::with_val(p, 2 * m + 2);
        let (v, e) = adaptive(&coarse, &fine, &a, &b, &tol, ABEL_MAX_DEPTH, &mut f)?;
        acc += v;
        disagreement += e.to_f64();
    }
    let acc = Float::with_val(ctx.bits(), acc);
    Ok((acc, disagreement + abel_tail_bound(2.0 * (intervals + 1) as f64)))
}

/// The Abel-summation integral, which should equal [`alternating_sum`].
pub fn abel_integral_check(ctx: &PrecisionContext) -> Result<Float> {
    Ok(abel_integral(ctx)?.0)
}

/// `Σ_k (-1)^k c_k` swapped into `Σ_n μ(n)/(2n² - 1)`, with the tail beyond
/// `N` recovered as `Σ_{i≥1} 2^-i T_i`.
pub fn alternating_sum_moebius(ctx: &PrecisionContext) -> Result<Float> {
    let w = ctx.working_digits() as f64;
    let cutoff = ladder_cutoff(64);
    let table = build_mobius(cutoff)?;
    let log_half = -std::f64::consts::LOG10_2;
    let plan = plan_tail(cutoff, 1, log_half, |_| log_half, -w - 2.0)?;
    let prec = digits_to_bits((w + 5.0) as u32);
    let tail = MobiusTail::new(&table, cutoff, plan.terms + 1, prec)?;
    let mut acc = Float::new(prec);
    for (n, mu) in table.squarefree(cutoff) {
        let d = Float::with_val(prec, n * n * 2 - 1);
        if mu > 0 {
            acc += d.recip();
        } else {
            acc -= d.recip();
        }
    }
    for i in 1..=plan.terms {
        acc += Float::with_val(prec, tail.moment(i) >> i);
    }
    Ok(Float::with_val(ctx.bits(), acc))
}

/// `Σ_k c_k s^k` against `(1/(1-s)) Σ_k (-s/(1-s))^k / ζ(2k+2)` for
/// `s ∈ [-1, 1/2)`; the residual is absolute.
///
/// For `|s| < 1` the left side sums binomial `c_k` up to `kmax` (chosen from
/// the bound `|c_k s^k| ≤ (π²/6)|s|^k` when `None`). At `s = -1` the series
/// only converges in the Abel sense, and the left side is the swapped Möbius
/// form of [`alternating_sum_moebius`].
pub fn power_series_identity(s: f64, kmax: Option<u64>, ctx: &PrecisionContext) -> Result<IdentityCheck> {
    if !(s.is_finite() && (-1.0..0.5).contains(&s)) {
        return Err(domain!("the power-series identity needs s in [-1, 1/2), got {s}"));
    }
    let rhs = power_series_rhs(s, ctx)?;
    if s == -1.0 {
        let lhs = alternating_sum_moebius(ctx)?;
        let residual = Float::with_val(lhs.prec(), &lhs - &rhs).abs();
        return Ok(IdentityCheck { lhs, rhs, residual, tail_bound: 0.0, terms: 0 });
    }
    let a = s.abs();
    let tail_of = |k: u64| COEF_BOUND * a.powf((k + 1) as f64) / (1.0 - a);
    let kmax = match kmax {
        Some(k) => k,
        None if a == 0.0 => 0,
        None => {
            let target = 10f64.powf(-(ctx.working_digits() as f64));
            ((target * (1.0 - a) / COEF_BOUND).log10() / a.log10()).ceil().max(0.0) as u64
        }
    };
    if kmax > MAX_BINOMIAL_INDEX {
        return Err(domain!("s = {s} needs {kmax} terms, beyond the binomial limit {MAX_BINOMIAL_INDEX}"));
    }
    let tail_bound = tail_of(kmax);
    let table = ck_difftable(kmax, ctx)?;
    let p = ctx.bits();
    let sf = Float::with_val(p, s);
    let mut pw = Float::with_val(p, 1);
    let mut lhs = Float::new(p);
    for k in 0..=kmax {
        lhs += Float::with_val(p, &pw * &table.record(k, ctx).value);
        pw *= &sf;
    }
    let residual = Float::with_val(p, &lhs - &rhs).abs();
    Ok(IdentityCheck { lhs, rhs, residual, tail_bound, terms: kmax + 1 })
}

fn power_series_rhs(s: f64, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.bits() + 16;
    let sf = Float::with_val(p, s);
    let one_minus = Float::with_val(p, 1 - &sf);
    let r = Float::with_val(p, -&sf) / &one_minus;
    let ar = r.to_f64().abs();
    // alternating or geometric with ratio |r| ≤ 1/2 for s ≤ 0; for 0 < s < 1/2
    // the terms alternate and decrease, so the remainder is below the next term
    let terms =
        if ar == 0.0 { 1 } else { ((p as f64 + 8.0) * std::f64::consts::LOG10_2 / -ar.log10()).ceil() as u32 + 2 };
    let zeta = ZetaEvenTable::new(terms + 1, p)?;
    let mut pw = Float::with_val(p, 1);
    let mut acc = Float::new(p);
    for k in 0..terms {
        acc += Float::with_val(p, &pw * zeta.f(k));
        pw *= &r;
    }
    Ok(Float::with_val(ctx.bits(), acc / one_minus))
}

/// `|R(k)/k - c_k|` from the power series of `R` and the binomial form of
/// `c_k`, both expansions in `1/ζ(2j + 2)`.
pub fn approx_identity_33(k: u64, ctx: &PrecisionContext) -> Result<Float> {
    if k == 0 || k > MAX_BINOMIAL_INDEX {
        return Err(domain!("k must be in [1, {MAX_BINOMIAL_INDEX}], got {k}"));
    }
    let r = riesz_series(k as f64, ctx)?;
    let c = ck_binomial(k, ctx)?;
    let p = ctx.bits();
    Ok(Float::with_val(p, Float::with_val(p, &r.value / k) - &c.value).abs())
}

/// `e^x R(x)/x` against `Σ_{1≤k≤kmax} R(k) x^k/(k·k!)`, the generating
/// identity with `c_k` replaced by `R(k)/k`; the residual is relative. The
/// `k = 0` term is omitted. `kmax` defaults to the smallest truncation whose
/// bound is below [`IDENTITY_TOLERANCE`].
pub fn approx_identity_34(x: f64, kmax: Option<u64>, ctx: &PrecisionContext) -> Result<IdentityCheck> {
    check_positive(x)?;
    let rhs = exp_riesz_over_x(x, ctx)?;
    let scale = rhs.to_f64().abs() + 1e-30;
    let log_target = (IDENTITY_TOLERANCE * scale / COEF_BOUND).log10();
    let kmax = kmax.unwrap_or_else(|| exp_series_terms(x, log_target));
    let tail_bound = COEF_BOUND * 10f64.powf(log10_exp_tail(x, kmax)) / scale;
    if tail_bound.is_nan() || tail_bound >= IDENTITY_TOLERANCE {
        return Err(domain!(
            "kmax = {kmax} leaves a relative tail bound of {tail_bound:e} at x = {x}; need at least {}",
            exp_series_terms(x, log_target)
        ));
    }
    let ks: Vec<f64> = (1..=kmax).map(|k| k as f64).collect();
    let table = build_mobius(kummer_cutoff(kmax as f64, RieszMethod::Kummer2, ctx))?;
    let rs = riesz_kummer_batch(&ks, RieszMethod::Kummer2, &table, ctx)?;
    let p = ctx.bits();
    let xf = Float::with_val(p, x);
    let mut w = Float::with_val(p, &xf);
    let mut lhs = Float::new(p);
    for (k, r) in (1..=kmax).zip(&rs) {
        lhs += Float::with_val(p, &w * &r.value) / k;
        w *= &xf;
        w /= k + 1;
    }
    let residual = relative(&lhs, &rhs);
    Ok(IdentityCheck { lhs, rhs, residual, tail_bound, terms: kmax })
}

/// Smallest `x` at which [`polya_szego_check`] is accepted.
pub const POLYA_SZEGO_MIN_X: f64 = 50.0;

/// `x^δ e^-x Σ_{k≥1} k^-δ x^k/k!`, which tends to 1 as `x` grows.
pub fn polya_szego_check(delta: f64, x: f64, ctx: &PrecisionContext) -> Result<Float> {
    if !(delta.is_finite() && (0.0..1.5).contains(&delta)) {
        return Err(domain!("δ must be in [0, 3/2), got {delta}"));
    }
    if !(x.is_finite() && x >= POLYA_SZEGO_MIN_X) {
        return Err(domain!("x must be at least {POLYA_SZEGO_MIN_X}, got {x}"));
    }
    let w = ctx.working_digits() as f64;
    let terms = exp_series_terms(x, x * std::f64::consts::LOG10_E - w - 2.0);
    // every term is positive, so relative precision carries through
    let p = ctx.bits() + 16;
    let xf = Float::with_val(p, x);
    let d = Float::with_val(p, delta);
    let mut t = Float::with_val(p, 1);
    let mut acc = Float::new(p);
    for k in 1..=terms {
        t *= &xf;
        t /= k;
        let ln_k = Float::with_val(p, k).ln();
        acc += Float::with_val(p, &t * (-Float::with_val(p, &d * &ln_k)).exp());
    }
    let scale = (Float::with_val(p, xf.ln_ref()) * &d - &xf).exp();
    Ok(Float::with_val(ctx.bits(), acc * scale))
}

/// `6/π²`, the common value of both sides of the generating identity at 0.
pub fn c0(prec: u32) -> Float {
    Float::with_val(prec, 6) / Float::with_val(prec, Constant::Pi).square()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30).unwrap()
    }

    // mpmath: nsum(lambda k: 2**-k/zeta(2*k), [1, inf]) at 40 digits
    const ALT_SUM: &str = "0.7825279853253842345766884742";

    fn close(a: &Float, s: &str, tol: f64) -> bool {
        let v = Float::with_val(a.prec(), Float::parse(s).unwrap());
        Float::with_val(a.prec(), a - &v).abs() < tol
    }

    #[test]
    fn alternating_sum_value() {
        let v = alternating_sum(&ctx()).unwrap();
        assert!(close(&v, ALT_SUM, 1e-27), "{}", v.to_string_radix(10, Some(30)));
        let first = Float::with_val(128, ZetaEvenTable::new(1, 128).unwrap().inverse(1)) / 2u32;
        assert!((first.to_f64() - 0.303_963_550_9).abs() < 1e-10);
    }

    #[test]
    fn alternating_sum_moebius_form() {
        let v = alternating_sum_moebius(&ctx()).unwrap();
        assert!(close(&v, ALT_SUM, 1e-27), "{}", v.to_string_radix(10, Some(30)));
    }

    #[test]
    fn abel_quadrature_agrees() {
        let c = PrecisionContext::new(20).unwrap();
        let (v, err) = abel_integral(&c).unwrap();
        assert!(close(&v, ALT_SUM, 1e-20), "{}", v.to_string_radix(10, Some(30)));
        assert!(err < 1e-20);
    }

    #[test]
    fn abel_integrand_and_tail() {
        let c = ctx();
        let x = Float::with_val(c.bits(), 3);
        let (z, dz) = zeta_and_deriv_real(&x, &c).unwrap();
        let expect = Float::with_val(c.bits(), dz.value / z.value.square()) / 2u32;
        assert_eq!(abel_integrand(&x, &c).unwrap(), expect);
        assert!(abel_tail_bound(60.0) < 1e-17);
    }

    #[test]
    fn power_series_special_points() {
        let c = ctx();
        let z = power_series_identity(0.0, None, &c).unwrap();
        assert_eq!(z.terms, 1);
        assert!((z.lhs.to_f64() - 0.607_927_101_9).abs() < 1e-10);
        assert!(z.residual < 1e-35);
        let m = power_series_identity(-1.0, None, &c).unwrap();
        assert!(close(&m.rhs, ALT_SUM, 1e-27));
        assert!(m.residual < 1e-30);
        let q = power_series_identity(0.25, None, &c).unwrap();
        assert!(q.residual < 1e-12 && q.tail_bound < 1e-30);
        let n = power_series_identity(-0.5, None, &c).unwrap();
        assert!(n.residual < 1e-30);
        assert!(power_series_identity(0.5, None, &c).is_err());
        assert!(power_series_identity(-1.01, None, &c).is_err());
    }

    #[test]
    fn generating_identity_holds() {
        let c = ctx();
        for (x, kmax) in [(1.0, 60), (5.0, 80), (10.0, 100)] {
            let r = verify_generating_identity(x, kmax, &c).unwrap();
            assert!(r.residual < 1e-25, "x = {x}: {}", r.residual.to_f64());
        }
        // near 0 both sides approach 6/π²
        let r = verify_generating_identity(1e-8, 10, &c).unwrap();
        assert!((r.lhs.to_f64() - c0(64).to_f64()).abs() < 1e-7);
        assert!(verify_generating_identity(10.0, 20, &c).is_err());
        assert!(verify_generating_identity(0.0, 20, &c).is_err());
    }

    #[test]
    fn approx_33_is_the_bound_difference() {
        let c = ctx();
        let d100 = approx_identity_33(100, &c).unwrap().to_f64();
        let bound = 3.0 * std::f64::consts::PI.sqrt() / 16.0 * 100f64.powf(-1.5);
        assert!(d100 < 1.5 * bound);
        let d400 = approx_identity_33(400, &c).unwrap().to_f64();
        assert!(d400 < d100);
        assert!(approx_identity_33(0, &c).is_err());
    }

    #[test]
    fn approx_34_is_approximate() {
        let c = ctx();
        // mpmath: |Σ_{k≤K} R(k) x^k/(k·k!) - e^x R(x)/x| / |e^x R(x)/x| with R
        // from its power series at 90 digits
        let r10 = approx_identity_34(10.0, Some(80), &c).unwrap();
        assert!((r10.residual.to_f64() - 0.096_476_983_754_313_82).abs() < 1e-13, "{}", r10.residual.to_f64());
        let r100 = approx_identity_34(100.0, None, &c).unwrap();
        assert!((r100.residual.to_f64() - 0.029_111_851_984_701_35).abs() < 1e-13, "{}", r100.residual.to_f64());
        assert!(r100.residual < r10.residual);
        assert!(approx_identity_34(10.0, Some(5), &c).is_err());
    }

    #[test]
    fn polya_szego() {
        let c = ctx();
        let zero = polya_szego_check(0.0, 60.0, &c).unwrap();
        let exact = 1.0 - (-60f64).exp();
        assert!((zero.to_f64() - exact).abs() < 1e-15);
        let r = polya_szego_check(0.75, 200.0, &c).unwrap().to_f64();
        assert!((0.99..=1.01).contains(&r), "{r}");
        let a = (polya_szego_check(0.75, 100.0, &c).unwrap().to_f64() - 1.0).abs();
        let b = (polya_szego_check(0.75, 400.0, &c).unwrap().to_f64() - 1.0).abs();
        assert!(b < a);
        assert!(polya_szego_check(1.5, 100.0, &c).is_err());
        assert!(polya_szego_check(0.5, 10.0, &c).is_err());
    }
}
