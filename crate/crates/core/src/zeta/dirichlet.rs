use rug::ops::Pow;
use rug::Float;

use super::em::Estimate;
use crate::error::{domain, Result};
use crate::precision::{err_float, PrecisionContext};
use crate::sieve::MobiusTable;

/// `1/ζ(s) ≈ Σ_{n≤N} μ(n) n^-s` for real `s ≥ 2`, with the rigorous tail
/// bound `N^(1-s)/(s-1)` (from `|μ| ≤ 1`) as the error estimate.
pub fn inv_zeta_dirichlet(s: f64, terms: u64, table: &MobiusTable, ctx: &PrecisionContext) -> Result<Estimate<Float>> {
    if s.is_nan() || s < 2.0 {
        return Err(domain!("Möbius–Dirichlet series needs real s >= 2, got {s}"));
    }
    if terms == 0 {
        return Err(domain!("Möbius–Dirichlet series needs at least one term"));
    }
    table.ensure_covers(terms, "Möbius–Dirichlet series")?;
    let wp = ctx.bits() + 16;
    let sf = Float::with_val(wp, s);
    let mut acc = Float::new(wp);
    for (n, mu) in table.squarefree(terms).collect::<Vec<_>>().into_iter().rev() {
        let t = Float::with_val(wp, n).pow(&sf).recip();
        if mu > 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    let tail = err_float(terms).pow(1.0 - s) / (s - 1.0);
    Ok(Estimate { value: Float::with_val(ctx.bits(), acc), err: tail })
}
