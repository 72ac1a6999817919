use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::bernoulli::bernoulli_rational;
use super::BigComplex;
use crate::error::{domain, Result};
use crate::precision::PrecisionContext;

/// Complex Gamma function.
///
/// For `Re z >= 1/2` the argument is shifted up by an integer `r` until
/// `Re(z + r)` exceeds `0.5·D + 10` (`D` = working digits), where the Stirling
/// series for `ln Γ` converges past `10^-D` before its terms start growing.
/// The shift is undone with the product `z (z+1) ... (z+r-1)`. Arguments left
/// of `1/2` go through the reflection formula.
pub fn gamma(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    if z.im.is_zero() && z.re <= 0 && z.re.is_integer() {
        return Err(domain!("Gamma has a pole at {}", z.re.to_f64()));
    }
    let wp = ctx.bits() + 32;
    let mut z = z.clone();
    z.set_prec(wp);
    if z.re < 0.5 {
        // Γ(z) = π / (sin(πz) Γ(1-z))
        let pi = Float::with_val(wp, Constant::Pi);
        let one_minus = BigComplex::new(Float::with_val(wp, 1 - &z.re), Float::with_val(wp, -&z.im));
        let g = gamma_right_half(&one_minus, ctx.working_digits(), wp);
        let s = z.scale(&pi).sin();
        let den = s.mul_ref(&g);
        return Ok(round(BigComplex::from_real(pi).div(&den), ctx.bits()));
    }
    Ok(round(gamma_right_half(&z, ctx.working_digits(), wp), ctx.bits()))
}

/// Real Gamma through the complex routine.
pub fn gamma_real(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let z = BigComplex::from_real(Float::with_val(ctx.bits(), x));
    Ok(gamma(&z, ctx)?.re)
}

fn round(mut z: BigComplex, prec: u32) -> BigComplex {
    z.set_prec(prec);
    z
}

fn gamma_right_half(z: &BigComplex, digits: u32, wp: u32) -> BigComplex {
    let threshold = 0.5 * digits as f64 + 10.0;
    let re = z.re.to_f64();
    let shift = if re < threshold { (threshold - re).ceil() as u32 } else { 0 };

    let w = z.add_real(&Float::with_val(wp, shift));
    let lg = ln_gamma_stirling(&w, digits, wp);
    let mut g = lg.exp();

    if shift > 0 {
        let mut prod = z.clone();
        for i in 1..shift {
            prod = prod.mul_ref(&z.add_real(&Float::with_val(wp, i)));
        }
        g = g.div(&prod);
    }
    g
}

/// `ln Γ(w)` by the Stirling series; requires `|w|` large relative to the
/// working digits (the caller guarantees it through the shift).
fn ln_gamma_stirling(w: &BigComplex, digits: u32, wp: u32) -> BigComplex {
    let half = Float::with_val(wp, 0.5);
    let ln_w = w.ln();
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    let half_ln_2pi = Float::with_val(wp, two_pi.ln_ref()) / 2u32;

    let mut acc = w.add_real(&-half).mul_ref(&ln_w);
    acc -= w;
    acc = acc.add_real(&half_ln_2pi);

    let inv_w = w.recip();
    let inv_w2 = inv_w.mul_ref(&inv_w);
    let mut pow = inv_w.clone();
    let tol = Float::with_val(53, 10f64).pow(-(digits as f64) - 5.0);
    let mut prev = f64::INFINITY;
    for m in 1..=2000u32 {
        let b = Float::with_val(wp, bernoulli_rational(2 * m).expect("even index below cap"));
        let coef = b / (2 * m as u64 * (2 * m as u64 - 1));
        let term = pow.scale(&coef);
        let mag = term.abs();
        acc += &term;
        let magf = mag.to_f64();
        if mag < tol || magf > prev {
            break;
        }
        prev = magf;
        pow = pow.mul_ref(&inv_w2);
    }
    acc
}

/// Stirling bracket `√(2πk) kᵏ e^(-k + 1/(12k+1)) < k! < √(2πk) kᵏ e^(-k + 1/(12k))`.
pub fn stirling_factorial_bounds(k: u32) -> (Float, Float) {
    let p = 128 + 4 * (32 - k.leading_zeros());
    let kf = Float::with_val(p, k);
    let two_pi_k = Float::with_val(p, Constant::Pi) * 2u32 * &kf;
    let base = Float::with_val(p, two_pi_k.sqrt_ref()) * Float::with_val(p, (&kf).pow(&kf));
    let lower_exp = Float::with_val(p, 1) / (12 * k as u64 + 1) - &kf;
    let upper_exp = Float::with_val(p, 1) / (12 * k as u64) - &kf;
    (Float::with_val(p, &base * lower_exp.exp()), Float::with_val(p, &base * upper_exp.exp()))
}
