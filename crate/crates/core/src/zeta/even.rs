use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{domain, resource, Result};
use crate::mpcore::tangent_numbers;
use crate::precision::PrecisionContext;

/// Largest `k` accepted by [`zeta_even`].
pub const MAX_ZETA_EVEN_INDEX: u32 = 10_000;

/// Largest `M` for which `ζ(2k)` is summed directly as `Σ_{n≤M} n^(-2k)`.
const DIRECT_TERMS: u32 = 64;

/// `ζ(2k)` and `1/ζ(2k)` for `0 ≤ k ≤ K` at a fixed binary precision.
///
/// Small `k` use the closed form `ζ(2k) = k T_k π^(2k) / ((4^k - 1)(2k)!)`
/// with exact tangent numbers `T_k`. Once `2k - 1 ≥ (prec + 10) / log2(64)`,
/// at most 64 terms of the defining series reach the target precision
/// and the table switches to direct summation, which avoids computing huge
/// tangent numbers. Index 0 holds `ζ(0) = -1/2`.
#[derive(Clone, Debug)]
pub struct ZetaEvenTable {
    prec: u32,
    values: Vec<Float>,
    inverses: Vec<Float>,
}

impl ZetaEvenTable {
    pub fn new(max_index: u32, prec: u32) -> Result<Self> {
        if max_index > MAX_ZETA_EVEN_INDEX * 4 {
            return Err(resource!("ζ(2k) table up to k = {max_index} is beyond the supported size"));
        }
        let wp = prec + 16;
        let k0 = direct_threshold(prec).min(max_index + 1);
        let mut values = Vec::with_capacity(max_index as usize + 1);
        values.push(Float::with_val(wp, -0.5));
        values.extend(closed_form_range(k0.saturating_sub(1), wp));
        if k0 <= max_index {
            values.extend(direct_range(k0, max_index, prec, wp));
        }
        let inverses = values.iter().map(|v| Float::with_val(prec, v.recip_ref())).collect();
        let values = values.into_iter().map(|v| Float::with_val(prec, v)).collect();
        Ok(ZetaEvenTable { prec, values, inverses })
    }

    pub fn with_context(max_index: u32, ctx: &PrecisionContext) -> Result<Self> {
        Self::new(max_index, ctx.bits())
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn max_index(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    /// `ζ(2k)`.
    pub fn value(&self, k: u32) -> &Float {
        &self.values[k as usize]
    }

    /// `1/ζ(2k)`.
    pub fn inverse(&self, k: u32) -> &Float {
        &self.inverses[k as usize]
    }

    /// `f(j) = 1/ζ(2j + 2)`, the sequence whose forward differences are `c_k`.
    pub fn f(&self, j: u32) -> &Float {
        &self.inverses[j as usize + 1]
    }
}

fn direct_threshold(prec: u32) -> u32 {
    let log2_m = (DIRECT_TERMS as f64).log2();
    let need = (prec as f64 + 10.0) / log2_m + 1.0;
    (need / 2.0).ceil().max(1.0) as u32
}

/// Terms needed so that the integral tail `M^(1-2k)/(2k-1)` is below `2^-(prec+10)`.
fn direct_terms(k: u32, prec: u32) -> u32 {
    let m = ((prec as f64 + 10.0) / (2.0 * k as f64 - 1.0)).exp2().ceil() as u32;
    m.clamp(2, DIRECT_TERMS)
}

fn closed_form_range(kmax: u32, wp: u32) -> Vec<Float> {
    if kmax == 0 {
        return Vec::new();
    }
    let t = tangent_numbers(kmax as usize);
    let pi2 = Float::with_val(wp, Constant::Pi).square();
    let mut pi_pow = Float::with_val(wp, 1);
    let mut fact = Float::with_val(wp, 1);
    let mut out = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        pi_pow *= &pi2;
        fact *= 2 * k as u64 - 1;
        fact *= 2 * k as u64;
        let four_k = Float::with_val(wp, Float::i_exp(1, 2 * k as i32));
        let den = Float::with_val(wp, &four_k - 1u32) * &fact;
        let mut v = Float::with_val(wp, &t[k as usize]);
        v *= k;
        v *= &pi_pow;
        v /= &den;
        out.push(v);
    }
    out
}

fn direct_range(kmin: u32, kmax: u32, prec: u32, wp: u32) -> Vec<Float> {
    let m0 = direct_terms(kmin, prec);
    let inv_sq: Vec<Float> = (1..=m0).map(|n| Float::with_val(wp, n).square().recip()).collect();
    let mut pw: Vec<Float> = inv_sq.iter().map(|q| Float::with_val(wp, Pow::pow(q, kmin))).collect();
    let mut out = Vec::with_capacity((kmax - kmin + 1) as usize);
    for k in kmin..=kmax {
        let m = direct_terms(k, prec) as usize;
        let mut acc = Float::new(wp);
        for p in pw[1..m].iter().rev() {
            acc += p;
        }
        acc += 1u32;
        out.push(acc);
        for (p, q) in pw.iter_mut().zip(&inv_sq).skip(1).take(m - 1) {
            *p *= q;
        }
    }
    out
}

/// `ζ(2k)` at context precision; `k = 0` gives `ζ(0) = -1/2`.
pub fn zeta_even(k: u32, ctx: &PrecisionContext) -> Result<Float> {
    if k > MAX_ZETA_EVEN_INDEX {
        return Err(domain!("ζ(2k) requested for k = {k} > {MAX_ZETA_EVEN_INDEX}"));
    }
    let prec = ctx.bits();
    if k == 0 {
        return Ok(Float::with_val(prec, -0.5));
    }
    let wp = prec + 16;
    let k0 = direct_threshold(prec);
    let v = if k < k0 {
        closed_form_range(k, wp).pop().expect("k >= 1")
    } else {
        direct_range(k, k, prec, wp).pop().expect("one entry")
    };
    Ok(Float::with_val(prec, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `Σ n^(-2k)` summed until the integral tail bound drops below 1e-60.
    fn brute_force(k: u32) -> Float {
        let p = 256;
        let mut acc = Float::new(p);
        let mut n = 1u64;
        loop {
            let t = Float::with_val(p, n).pow(-(2.0 * k as f64));
            acc += &t;
            let tail = (n as f64).powf(1.0 - 2.0 * k as f64) / (2.0 * k as f64 - 1.0);
            if tail < 1e-60 {
                break;
            }
            n += 1;
        }
        acc
    }

    #[test]
    fn named_values() {
        let ctx = PrecisionContext::new(40).unwrap();
        let pi = Float::with_val(ctx.bits(), Constant::Pi);
        let z2 = zeta_even(1, &ctx).unwrap();
        assert!((z2 - Float::with_val(ctx.bits(), pi.square_ref()) / 6u32).abs() < 1e-48);
        let z4 = zeta_even(2, &ctx).unwrap();
        let pi4 = Float::with_val(ctx.bits(), Pow::pow(&pi, 4));
        assert!((z4 - pi4 / 90u32).abs() < 1e-48);
        assert_eq!(zeta_even(0, &ctx).unwrap(), -0.5);
    }

    #[test]
    fn zeta_20_against_direct_sum() {
        let ctx = PrecisionContext::new(40).unwrap();
        let v = zeta_even(10, &ctx).unwrap();
        assert!((v.clone() - brute_force(10)).abs() < 1e-45);
        assert!((v.to_f64() - 1.000000954).abs() < 1e-9);
    }

    #[test]
    fn closed_form_matches_summation_up_to_100() {
        // For every even argument s = 2k ≤ 100 the partial sum to N must
        // leave a remainder inside the integral bracket
        // [(N+1)^(1-s)/(s-1), N^(1-s)/(s-1)].
        let prec = PrecisionContext::new(40).unwrap().bits();
        let table = ZetaEvenTable::new(50, prec).unwrap();
        let p = 256;
        for k in 1..=50u32 {
            let s = 2 * k;
            let n_max = 2000u32;
            let mut partial = Float::new(p);
            for n in (1..=n_max).rev() {
                partial += Float::with_val(p, n).pow(-(s as i32));
            }
            let rem = Float::with_val(p, table.value(k) - &partial);
            let lo = Float::with_val(p, n_max + 1).pow(1 - s as i32) / (s - 1);
            let hi = Float::with_val(p, n_max).pow(1 - s as i32) / (s - 1);
            let slack = 1e-48;
            assert!(rem >= lo - slack && rem <= hi + slack, "s = {s}: remainder {rem}");
        }
    }

    #[test]
    fn table_switches_methods_seamlessly() {
        let prec = PrecisionContext::new(60).unwrap().bits();
        let k0 = direct_threshold(prec);
        let table = ZetaEvenTable::new(k0 + 40, prec).unwrap();
        for k in [k0 - 1, k0, k0 + 1, k0 + 40] {
            let c = closed_form_range(k, prec + 16).pop().unwrap();
            let d = Float::with_val(prec, table.value(k) - c).abs();
            assert!(d < 1e-68, "k = {k}");
        }
        for k in 1..=table.max_index() {
            let prod = Float::with_val(prec, table.value(k) * table.inverse(k));
            assert!((prod - 1u32).abs() < 1e-68);
        }
    }

    #[test]
    fn decreasing_toward_one() {
        let table = ZetaEvenTable::new(200, 200).unwrap();
        // 2^(-2k) stays representable next to 1 for 2k < 200
        for k in 1..99 {
            assert!(table.value(k) > table.value(k + 1));
            assert!(*table.value(k + 1) > 1u32);
        }
        for k in 99..200 {
            assert!(table.value(k) >= table.value(k + 1));
            assert!(*table.value(k + 1) >= 1u32);
        }
        // |ζ(2k) - 1 - 2^(-2k)| < 2·3^(-2k) for k ≥ 2
        for k in 2..=50u32 {
            let excess =
                Float::with_val(200, table.value(k) - 1u32) - Float::with_val(200, Float::i_exp(1, -2 * k as i32));
            let bound = Float::with_val(200, 3u32).pow(-2 * k as i32) * 2u32;
            assert!(excess.abs() < bound, "k = {k}");
        }
    }

    #[test]
    fn large_index_rejected() {
        let ctx = PrecisionContext::default();
        assert!(zeta_even(MAX_ZETA_EVEN_INDEX + 1, &ctx).is_err());
    }
}
