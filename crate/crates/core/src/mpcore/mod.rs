//! Arbitrary-precision building blocks: MPFR-backed reals, a small complex
//! type, exact Bernoulli numbers, factorial bounds and the complex Gamma
//! function.

mod bernoulli;
mod complex;
mod gamma;

use rug::float::Constant;
use rug::{Float, Integer};

pub use bernoulli::{bernoulli, bernoulli_rational, tangent_numbers, MAX_BERNOULLI_INDEX};
pub use complex::BigComplex;
pub use gamma::{gamma, gamma_real, stirling_factorial_bounds};

/// Real scalar at an explicit binary precision.
pub type BigReal = Float;

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `6/π² = 1/ζ(2)`.
pub fn six_over_pi_sq(prec: u32) -> Float {
    let p = pi(prec);
    Float::with_val(prec, 6) / p.square()
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// `C(n, k)` as a float; `n` may be large (up to `u64`) since the value is
/// built as a running product.
pub fn binomial_float(n: u64, k: u64, prec: u32) -> Float {
    let mut acc = Float::with_val(prec, 1);
    for i in 0..k.min(n + 1) {
        acc *= n - i;
        acc /= i + 1;
    }
    if k > n {
        acc = Float::new(prec);
    }
    acc
}

/// Render a float with `digits` significant digits in plain or scientific
/// notation, matching what `f64` formatting would choose for the magnitude.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x.is_sign_negative() {
            "-inf".into()
        } else {
            "inf".into()
        };
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits.max(1)));
    let exp = exp.unwrap_or(0) as i64 - 1;
    let sign = if neg { "-" } else { "" };
    let (first, rest) = mantissa.split_at(1);
    let rest = rest.trim_end_matches('0');
    if (-5..=digits as i64).contains(&exp) && exp < 21 {
        let all: String = mantissa.clone();
        if exp < 0 {
            let body = all.trim_end_matches('0');
            format!("{sign}0.{}{}", "0".repeat((-exp - 1) as usize), body)
        } else {
            let split = (exp + 1) as usize;
            let (int, frac) = if split <= all.len() { all.split_at(split) } else { (all.as_str(), "") };
            let int = format!("{int}{}", "0".repeat(split.saturating_sub(all.len())));
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                format!("{sign}{int}")
            } else {
                format!("{sign}{int}.{frac}")
            }
        }
    } else if rest.is_empty() {
        format!("{sign}{first}e{exp}")
    } else {
        format!("{sign}{first}.{rest}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        let p = 128;
        assert_eq!(format_float(&Float::with_val(p, 0.5), 17), "0.5");
        assert_eq!(format_float(&Float::with_val(p, -1234.5), 17), "-1234.5");
        assert_eq!(format_float(&Float::with_val(p, 1e-9), 5), "1e-9");
        assert_eq!(format_float(&Float::with_val(p, 7.775e-5), 4), "0.00007775");
        assert_eq!(format_float(&Float::with_val(p, 3e30), 5), "3e30");
        assert_eq!(format_float(&Float::with_val(p, 120), 17), "120");
        assert_eq!(format_float(&six_over_pi_sq(p), 10), "0.6079271019");
    }

    #[test]
    fn binomial_float_matches_integer() {
        let f = binomial_float(64, 20, 256);
        assert_eq!(f, binomial(64, 20));
        assert!(binomial_float(5, 7, 64).is_zero());
    }
}
