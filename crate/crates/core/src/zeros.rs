//! Nontrivial zeta zeros and the spectral coefficients `Γ(1 - ρ/2) / ζ′(ρ)`.
//!
//! Ordinates are data. A file of the first 100 (25 decimals) is bundled, and
//! other files in the same format can be loaded: UTF-8 text, one ordinate per
//! line, `#` starts a comment, strictly increasing, and at least 15
//! significant digits each. Every ordinate is validated by requiring
//! `|ζ(1/2 + iγ)| < 10^-12` before its coefficient is formed. The precision of
//! the coefficient is limited by that of the ordinate, not just by the context.

use std::path::Path;

use rayon::prelude::*;
use rug::Float;

use crate::error::{domain, input, Result};
use crate::mpcore::{gamma, BigComplex};
use crate::precision::PrecisionContext;
use crate::zeta::zeta_and_deriv_complex;

/// The bundled ordinates.
pub const BUNDLED_ZEROS: &str = include_str!("../data/zeros100.txt");

/// Minimum number of significant digits per ordinate.
pub const MIN_ORDINATE_DIGITS: usize = 15;

/// Largest `|ζ(1/2 + iγ)|` accepted as confirming an ordinate.
pub const RESIDUAL_THRESHOLD: f64 = 1e-12;

/// Binary precision at which ordinates are stored.
const ORDINATE_BITS: u32 = 256;

#[derive(Clone, Debug)]
pub struct ZeroCoefficient {
    /// 1-based position in the ordinate list.
    pub index: usize,
    pub gamma: Float,
    pub rho: BigComplex,
    pub a: Float,
    pub b: Float,
    pub modulus: Float,
    /// `|ζ(ρ)|` at the stored ordinate.
    pub residual: Float,
}

fn significant_digits(s: &str) -> usize {
    let mantissa = s.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len()
}

/// Parses the first `count` ordinates from zeros-file text. `source` names
/// the text in error messages.
pub fn parse_zeros(text: &str, count: usize, source: &str) -> Result<Vec<Float>> {
    let mut out: Vec<Float> = Vec::with_capacity(count);
    for (i, raw) in text.lines().enumerate() {
        if out.len() == count {
            break;
        }
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parsed = Float::parse(line).map_err(|e| input!("{source}:{line_no}: cannot parse '{line}': {e}"))?;
        let v = Float::with_val(ORDINATE_BITS, parsed);
        if significant_digits(line) < MIN_ORDINATE_DIGITS {
            return Err(input!(
                "{source}:{line_no}: ordinate '{line}' has fewer than {MIN_ORDINATE_DIGITS} significant digits"
            ));
        }
        if v <= 0 {
            return Err(input!("{source}:{line_no}: ordinate must be positive"));
        }
        if let Some(prev) = out.last() {
            if v <= *prev {
                return Err(input!("{source}:{line_no}: ordinates must be strictly increasing"));
            }
        }
        out.push(v);
    }
    if out.len() < count {
        return Err(input!("{source}: requested {count} ordinates but only {} present", out.len()));
    }
    Ok(out)
}

/// First `count` ordinates from a file.
pub fn load_zeros(path: &Path, count: usize) -> Result<Vec<Float>> {
    let text = std::fs::read_to_string(path)?;
    parse_zeros(&text, count, &path.display().to_string())
}

/// First `count` bundled ordinates.
pub fn bundled_zeros(count: usize) -> Result<Vec<Float>> {
    parse_zeros(BUNDLED_ZEROS, count, "bundled zeros")
}

/// `a + ib = Γ(1 - ρ/2) / ζ′(ρ)` at `ρ = 1/2 + iγ`, after checking `|ζ(ρ)|`.
pub fn compute_coefficient(gamma_ord: &Float, index: usize, ctx: &PrecisionContext) -> Result<ZeroCoefficient> {
    if *gamma_ord <= 0 {
        return Err(domain!("zero ordinate must be positive"));
    }
    let p = ctx.bits();
    let rho = BigComplex::new(Float::with_val(p, 0.5), Float::with_val(p, gamma_ord));
    let (z, dz) = zeta_and_deriv_complex(&rho, ctx)?;
    let residual = z.value.abs();
    if residual >= RESIDUAL_THRESHOLD {
        return Err(input!(
            "ordinate {} is not a zeta zero: |ζ(1/2 + iγ)| = {:e}",
            gamma_ord.to_string_radix(10, Some(20)),
            residual.to_f64()
        ));
    }
    // 1 - ρ/2 = 3/4 - iγ/2
    let arg = BigComplex::new(Float::with_val(p, 0.75), Float::with_val(p, -Float::with_val(p, gamma_ord) / 2u32));
    let g = gamma(&arg, ctx)?;
    let c = g.div(&dz.value);
    let modulus = c.abs();
    Ok(ZeroCoefficient { index, gamma: Float::with_val(p, gamma_ord), rho, a: c.re, b: c.im, modulus, residual })
}

/// Coefficients for a list of ordinates, in order.
pub fn coefficients_for(ordinates: &[Float], ctx: &PrecisionContext) -> Result<Vec<ZeroCoefficient>> {
    ordinates.par_iter().enumerate().map(|(i, g)| compute_coefficient(g, i + 1, ctx)).collect()
}

/// Coefficients for the first `count` bundled zeros.
pub fn coefficient_table(count: usize, ctx: &PrecisionContext) -> Result<Vec<ZeroCoefficient>> {
    coefficients_for(&bundled_zeros(count)?, ctx)
}
