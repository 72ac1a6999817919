//! Shared fixtures for the criterion benches.

use rzl_core::baez::moebius_cutoff;
use rzl_core::riesz::required_table;
use rzl_core::{build_mobius, MobiusTable, PrecisionContext, RieszMethod};

/// Precision used by every bench unless it measures precision itself.
pub const BENCH_DIGITS: u32 = 30;

pub fn context() -> PrecisionContext {
    PrecisionContext::new(BENCH_DIGITS).expect("valid digits")
}

/// A Möbius table large enough for Möbius-form `c_k` up to `kmax`.
pub fn ck_table(kmax: u64, ctx: &PrecisionContext) -> MobiusTable {
    build_mobius(moebius_cutoff(kmax, ctx)).expect("table fits")
}

/// A Möbius table large enough for Kummer evaluations of `R` up to `xmax`.
pub fn riesz_table(xmax: f64, method: RieszMethod, ctx: &PrecisionContext) -> MobiusTable {
    build_mobius(required_table(xmax, method, ctx)).expect("table fits")
}
