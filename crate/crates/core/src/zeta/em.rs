//! Euler–Maclaurin evaluation of ζ(s) and ζ′(s).
//!
//! With `N` head terms and `M` correction terms
//!
//! ```text
//! ζ(s) = Σ_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
//!        + Σ_{m=1..M} B_2m/(2m)! · s(s+1)…(s+2m-2) · N^(-s-2m+1) + E
//! ```
//!
//! and ζ′ follows by differentiating every term (the Pochhammer factor via
//! its logarithmic derivative). `N = ⌈|Im s|/π⌉ + ⌈D/2⌉ + 10` for `D`
//! working digits, which keeps the ratio of consecutive correction terms
//! below about `(|s| + 2m)² / (2πN)²`; `M` grows until a term drops under
//! `10^-D` relative to the running sum. The error estimate is twice the last
//! correction term plus a rounding allowance.

use rug::ops::Pow;
use rug::Float;

use crate::error::{domain, numeric, Result};
use crate::mpcore::{bernoulli_rational, BigComplex};
use crate::precision::{err_float, PrecisionContext};

/// A value with an error estimate.
#[derive(Clone, Debug)]
pub struct Estimate<T> {
    pub value: T,
    pub err: Float,
}

const MAX_CORRECTIONS: u32 = 600;

fn head_terms(im: f64, digits: u32) -> u64 {
    (im.abs() / std::f64::consts::PI).ceil() as u64 + (digits as u64).div_ceil(2) + 10
}

fn bernoulli_over_factorial(m: u32, prec: u32) -> Float {
    let b = Float::with_val(prec, bernoulli_rational(2 * m).expect("index below cap"));
    let f = Float::with_val(prec, rug::Integer::from(rug::Integer::factorial(2 * m)));
    b / f
}

/// ζ(s) and ζ′(s) for real `s ≥ 1.5`.
pub fn zeta_and_deriv_real(s: &Float, ctx: &PrecisionContext) -> Result<(Estimate<Float>, Estimate<Float>)> {
    if *s < 1.5 {
        return Err(domain!("real zeta evaluator needs s >= 1.5, got {}", s.to_f64()));
    }
    let digits = ctx.working_digits();
    let wp = ctx.bits() + 24;
    let s = Float::with_val(wp, s);
    let n_head = head_terms(0.0, digits);

    let mut z = Float::new(wp);
    let mut dz = Float::new(wp);
    for n in (1..n_head).rev() {
        let ln_n = Float::with_val(wp, n).ln();
        let t = (-Float::with_val(wp, &s * &ln_n)).exp();
        dz -= Float::with_val(wp, &t * &ln_n);
        z += t;
    }

    let nf = Float::with_val(wp, n_head);
    let ln_n = Float::with_val(wp, nf.ln_ref());
    let n_pow_s = (-Float::with_val(wp, &s * &ln_n)).exp(); // N^-s
    let sm1 = Float::with_val(wp, &s - 1u32);
    let n1s = Float::with_val(wp, &n_pow_s * &nf); // N^(1-s)
    let int_term = Float::with_val(wp, &n1s / &sm1);
    z += &int_term;
    dz -= Float::with_val(wp, &int_term * &ln_n);
    dz -= Float::with_val(wp, &int_term / &sm1);
    let half = Float::with_val(wp, &n_pow_s / 2u32);
    dz -= Float::with_val(wp, &half * &ln_n);
    z += &half;

    // Correction terms.
    let inv_n = Float::with_val(wp, nf.recip_ref());
    let inv_n2 = Float::with_val(wp, inv_n.square_ref());
    let mut npow = Float::with_val(wp, &n_pow_s * &inv_n); // N^(-s-1)
    let mut poch = s.clone();
    let mut dpoch = Float::with_val(wp, 1);
    let tol = Float::with_val(wp, 10f64).pow(-(digits as f64) - 3.0);
    let mut last = Float::with_val(wp, 0);
    let mut converged = false;
    for m in 1..=MAX_CORRECTIONS {
        let c = bernoulli_over_factorial(m, wp);
        let t = Float::with_val(wp, &c * &poch) * &npow;
        let dt = Float::with_val(wp, &c * &dpoch) * &npow - Float::with_val(wp, &t * &ln_n);
        z += &t;
        dz += &dt;
        last = Float::with_val(wp, t.abs_ref()).max(&Float::with_val(wp, dt.abs_ref()));
        if last < tol {
            converged = true;
            break;
        }
        // (s)_(2m+1) = (s)_(2m-1) (s+2m-1)(s+2m)
        let a = Float::with_val(wp, &s + (2 * m - 1));
        let b = Float::with_val(wp, &s + 2 * m);
        let lin = Float::with_val(wp, &a + &b);
        let ab = Float::with_val(wp, &a * &b);
        dpoch = dpoch * &ab + Float::with_val(wp, &poch * &lin);
        poch *= &ab;
        npow *= &inv_n2;
    }
    if !converged {
        return Err(numeric!("Euler–Maclaurin corrections did not converge at s = {}", s.to_f64()));
    }
    let round = err_float(Float::i_exp(1, -(wp as i32) + 8)) * n_head;
    let err = err_float(&last) * 2u32 + &round;
    let dz_err = err.clone() * 4u32;
    Ok((
        Estimate { value: Float::with_val(ctx.bits(), z), err },
        Estimate { value: Float::with_val(ctx.bits(), dz), err: dz_err },
    ))
}

pub fn zeta_real(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Ok(zeta_and_deriv_real(s, ctx)?.0.value)
}

pub fn zeta_deriv_real(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Ok(zeta_and_deriv_real(s, ctx)?.1.value)
}

/// Largest `|Im s|` accepted by the complex evaluator.
pub const MAX_IMAG: f64 = 1000.0;

/// ζ(s) and ζ′(s) for complex `s ≠ 1` with `|Im s| ≤ 1000`.
pub fn zeta_and_deriv_complex(
    s: &BigComplex,
    ctx: &PrecisionContext,
) -> Result<(Estimate<BigComplex>, Estimate<BigComplex>)> {
    let t = s.im.to_f64();
    if t.abs() > MAX_IMAG {
        return Err(domain!("|Im s| = {} exceeds {MAX_IMAG}", t.abs()));
    }
    if s.im.is_zero() && s.re == 1u32 {
        return Err(domain!("ζ has a pole at s = 1"));
    }
    if s.re.to_f64() < -20.0 {
        return Err(domain!("complex zeta evaluator needs Re s >= -20"));
    }
    let digits = ctx.working_digits();
    let wp = ctx.bits() + 24 + (t.abs().max(1.0).log2().ceil() as u32);
    let mut s = s.clone();
    s.set_prec(wp);
    let n_head = head_terms(t, digits);

    let mut z = BigComplex::with_val(wp, 0, 0);
    let mut dz = BigComplex::with_val(wp, 0, 0);
    let neg_s = BigComplex::new(Float::with_val(wp, -&s.re), Float::with_val(wp, -&s.im));
    for n in (1..n_head).rev() {
        let ln_n = Float::with_val(wp, n).ln();
        let term = neg_s.real_base_pow(&ln_n);
        dz -= &term.scale(&ln_n);
        z += &term;
    }

    let nf = Float::with_val(wp, n_head);
    let ln_n = Float::with_val(wp, nf.ln_ref());
    let n_pow_s = neg_s.real_base_pow(&ln_n); // N^-s
    let sm1 = s.add_real(&Float::with_val(wp, -1));
    let inv_sm1 = sm1.recip();
    let int_term = n_pow_s.scale(&nf).mul_ref(&inv_sm1); // N^(1-s)/(s-1)
    z += &int_term;
    dz -= &int_term.scale(&ln_n);
    dz -= &int_term.mul_ref(&inv_sm1);
    let half = n_pow_s.scale(&Float::with_val(wp, 0.5));
    dz -= &half.scale(&ln_n);
    z += &half;

    let inv_n = Float::with_val(wp, nf.recip_ref());
    let inv_n2 = Float::with_val(wp, inv_n.square_ref());
    let mut npow = n_pow_s.scale(&inv_n);
    let mut poch = s.clone();
    let mut dpoch = BigComplex::with_val(wp, 1, 0);
    let tol = Float::with_val(wp, 10f64).pow(-(digits as f64) - 3.0);
    let mut last = Float::with_val(wp, 0);
    let mut converged = false;
    for m in 1..=MAX_CORRECTIONS {
        let c = bernoulli_over_factorial(m, wp);
        let cp = npow.scale(&c);
        let term = poch.mul_ref(&cp);
        let dterm = &dpoch.mul_ref(&cp) - &term.scale(&ln_n);
        z += &term;
        dz += &dterm;
        last = term.abs().max(&dterm.abs());
        if last < tol {
            converged = true;
            break;
        }
        let a = s.add_real(&Float::with_val(wp, 2 * m - 1));
        let b = s.add_real(&Float::with_val(wp, 2 * m));
        let lin = &a + &b;
        let ab = a.mul_ref(&b);
        dpoch = &dpoch.mul_ref(&ab) + &poch.mul_ref(&lin);
        poch = poch.mul_ref(&ab);
        npow = npow.scale(&inv_n2);
    }
    if !converged {
        return Err(numeric!("Euler–Maclaurin corrections did not converge at s = {s}"));
    }
    let round = err_float(Float::i_exp(1, -(wp as i32) + 8)) * n_head;
    let err = err_float(&last) * 2u32 + &round;
    let out = |mut c: BigComplex| {
        c.set_prec(ctx.bits());
        c
    };
    Ok((Estimate { value: out(z), err: err.clone() }, Estimate { value: out(dz), err: err * 4u32 }))
}

pub fn zeta_complex(s: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    Ok(zeta_and_deriv_complex(s, ctx)?.0.value)
}

pub fn zeta_deriv_complex(s: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    Ok(zeta_and_deriv_complex(s, ctx)?.1.value)
}
