//! Gauss–Legendre quadrature at arbitrary precision.

use rug::float::Constant;
use rug::Float;

use crate::error::{numeric, Result};

/// Nodes and weights of the `n`-point rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton's method from the Chebyshev-like guess
    /// `cos(π(i - 1/4)/(n + 1/2))`.
    pub fn new(n: usize, prec: u32) -> Self {
        let wp = prec + 32;
        let pi = Float::with_val(wp, Constant::Pi);
        let tol = Float::with_val(wp, Float::i_exp(1, -(prec as i32) - 8));
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 1..=n {
            let guess = Float::with_val(wp, &pi * (i as f64 - 0.25)) / (n as f64 + 0.5);
            let mut x = guess.cos();
            let mut dp = Float::new(wp);
            for _ in 0..100 {
                let (p, d) = legendre(n, &x);
                dp = d;
                let dx = Float::with_val(wp, &p / &dp);
                x -= &dx;
                if dx.abs() < tol {
                    let (_, d) = legendre(n, &x);
                    dp = d;
                    break;
                }
            }
            // w = 2 / ((1 - x²) P_n'(x)²)
            let one_minus = Float::with_val(wp, 1 - Float::with_val(wp, x.square_ref()));
            let w = Float::with_val(wp, 2) / (one_minus * dp.square());
            nodes.push(Float::with_val(prec, x));
            weights.push(Float::with_val(prec, w));
        }
        GaussLegendre { nodes, weights }
    }

    /// `∫_a^b f` with the rule.
    pub fn integrate<F>(&self, a: &Float, b: &Float, mut f: F) -> Result<Float>
    where
        F: FnMut(&Float) -> Result<Float>,
    {
        let prec = a.prec().max(b.prec());
        let half = Float::with_val(prec, b - a) / 2u32;
        let mid = Float::with_val(prec, a + b) / 2u32;
        let mut acc = Float::new(prec);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = Float::with_val(prec, &half * x) + &mid;
            acc += f(&t)? * w;
        }
        Ok(acc * half)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = k as u32;
        let t = Float::with_val(prec, x * &p1) * (2 * kf - 1);
        let p2 = (t - Float::with_val(prec, &p0 * (kf - 1))) / kf;
        p0 = p1;
        p1 = p2;
    }
    // P_n' = n (x P_n - P_{n-1}) / (x² - 1)
    let num = (Float::with_val(prec, x * &p1) - &p0) * n as u32;
    let den = Float::with_val(prec, x.square_ref()) - 1u32;
    let d = num / den;
    (p1, d)
}

/// Adaptive integration on `[a, b]`: the `n`- and `2n`-point rules are
/// compared and the interval halved until they agree to `tol`. Returns the
/// integral and the accumulated disagreement.
pub fn adaptive<F>(
    coarse: &GaussLegendre,
    fine: &GaussLegendre,
    a: &Float,
    b: &Float,
    tol: &Float,
    depth: u32,
    f: &mut F,
) -> Result<(Float, Float)>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let q1 = coarse.integrate(a, b, &mut *f)?;
    let q2 = fine.integrate(a, b, &mut *f)?;
    let diff = Float::with_val(q2.prec(), &q2 - &q1).abs();
    if diff <= *tol {
        return Ok((q2, diff));
    }
    if depth == 0 {
        return Err(numeric!(
            "quadrature on [{}, {}] did not reach tolerance {:e}",
            a.to_f64(),
            b.to_f64(),
            tol.to_f64()
        ));
    }
    let mid = Float::with_val(a.prec(), a + b) / 2u32;
    let half_tol = Float::with_val(tol.prec(), tol / 2u32);
    let (l, el) = adaptive(coarse, fine, a, &mid, &half_tol, depth - 1, f)?;
    let (r, er) = adaptive(coarse, fine, &mid, b, &half_tol, depth - 1, f)?;
    Ok((l + r, el + er))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let g = GaussLegendre::new(5, 200);
        let a = Float::with_val(200, 0);
        let b = Float::with_val(200, 2);
        // ∫_0^2 x^9 dx = 102.4
        let v = g.integrate(&a, &b, |x| Ok(x.pow_ref_u(9))).unwrap();
        let exact = Float::with_val(200, 1024) / 10u32;
        assert!(Float::with_val(200, v - exact).abs() < 1e-50);
    }

    #[test]
    fn weights_sum_to_two() {
        let g = GaussLegendre::new(30, 300);
        let s: Float = g.weights.iter().fold(Float::new(300), |acc, w| acc + w);
        assert!((s - 2u32).abs() < 1e-80);
    }

    #[test]
    fn adaptive_exponential() {
        let p = 200;
        let c = GaussLegendre::new(10, p);
        let f = GaussLegendre::new(20, p);
        let a = Float::with_val(p, 0);
        let b = Float::with_val(p, 3);
        let tol = Float::with_val(p, 1e-50);
        let (v, _) = adaptive(&c, &f, &a, &b, &tol, 20, &mut |x: &Float| Ok(Float::with_val(p, x.exp_ref()))).unwrap();
        let exact = Float::with_val(p, 3).exp() - 1u32;
        assert!((v - exact).abs() < 1e-48);
    }

    trait PowU {
        fn pow_ref_u(&self, e: u32) -> Float;
    }

    impl PowU for Float {
        fn pow_ref_u(&self, e: u32) -> Float {
            use rug::ops::Pow;
            Float::with_val(self.prec(), self.pow(e))
        }
    }
}
