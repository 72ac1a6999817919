use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Assign, Float};

/// Arbitrary-precision complex number built on two MPFR floats.
///
/// Only the operations the zeta and Gamma evaluators need are provided.
/// Every result carries the precision of `self`.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn with_val<R, I>(prec: u32, re: R, im: I) -> Self
    where
        Float: Assign<R> + Assign<I>,
    {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        BigComplex { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn set_prec(&mut self, prec: u32) {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut n = Float::with_val(p, self.re.square_ref());
        n += Float::with_val(p, self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        BigComplex::new(Float::with_val(p, &self.re * k), Float::with_val(p, &self.im * k))
    }

    pub fn add_real(&self, k: &Float) -> Self {
        BigComplex::new(Float::with_val(self.prec(), &self.re + k), self.im.clone())
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        BigComplex::new(Float::with_val(p, &self.re / &n), Float::with_val(p, -Float::with_val(p, &self.im / &n)))
    }

    pub fn div(&self, other: &BigComplex) -> Self {
        self.mul_ref(&other.recip())
    }

    pub fn mul_ref(&self, other: &BigComplex) -> Self {
        let p = self.prec();
        let mut re = Float::with_val(p, &self.re * &other.re);
        re -= Float::with_val(p, &self.im * &other.im);
        let mut im = Float::with_val(p, &self.re * &other.im);
        im += Float::with_val(p, &self.im * &other.re);
        BigComplex::new(re, im)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex::new(c * &m, s * &m)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        BigComplex::new(Float::with_val(p, self.abs().ln_ref()), self.arg())
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        BigComplex::new(s * ch, c * sh)
    }

    /// `base^self` for a positive real base, via `exp(self * ln base)`.
    pub fn real_base_pow(&self, ln_base: &Float) -> Self {
        self.scale(ln_base).exp()
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex::new(Float::with_val(p, &self.re + &rhs.re), Float::with_val(p, &self.im + &rhs.im))
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex::new(Float::with_val(p, &self.re - &rhs.re), Float::with_val(p, &self.im - &rhs.im))
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        self.mul_ref(rhs)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-self.re, -self.im)
    }
}

impl std::ops::AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: &BigComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl std::ops::SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: &BigComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let re = self.re.to_string_radix(10, Some(digits));
        let im = self.im.to_string_radix(10, Some(digits));
        if self.im.is_sign_negative() {
            write!(f, "{re} - {}i", im.trim_start_matches('-'))
        } else {
            write!(f, "{re} + {im}i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn close(a: &BigComplex, b: &BigComplex, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol
    }

    #[test]
    fn exp_ln_roundtrip() {
        let z = BigComplex::with_val(P, 0.75, -7.5);
        assert!(close(&z.ln().exp(), &z, 1e-30));
    }

    #[test]
    fn euler_identity() {
        let pi = Float::with_val(P, rug::float::Constant::Pi);
        let z = BigComplex::new(Float::new(P), pi).exp();
        assert!(close(&z, &BigComplex::with_val(P, -1, 0), 1e-35));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = BigComplex::with_val(P, 3.25, -1.5);
        let b = BigComplex::with_val(P, -0.5, 2.0);
        assert!(close(&(&a * &b).div(&b), &a, 1e-35));
    }

    #[test]
    fn sine_of_imaginary_is_sinh() {
        let z = BigComplex::with_val(P, 0, 2);
        let s = z.sin();
        assert!(s.re.is_zero());
        assert!((s.im.to_f64() - 2f64.sinh()).abs() < 1e-14);
    }
}
