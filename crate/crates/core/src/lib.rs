//! Numerics for the Riesz function `R(x)` and the Baez-Duarte sequence `c_k`.
//!
//! Both objects are evaluated by several independent representations so
//! that they can be cross-checked: the defining power series and binomial
//! sums at high precision, Möbius-weighted forms accelerated by Kummer's
//! transformation with a controlled tail, forward-difference tables, and
//! the oscillatory expansion over nontrivial zeta zeros. The [`analysis`]
//! module ties `R` and `c_k` together (generating function, the
//! `|R(k)/k - c_k|` bound, alternating and partial sums, envelope fits).
//!
//! All real arithmetic is MPFR through [`rug`]; a [`PrecisionContext`]
//! fixes the working precision.

pub mod analysis;
pub mod baez;
pub mod error;
pub mod mpcore;
pub mod precision;
pub mod riesz;
pub mod roots;
pub mod sieve;
pub mod suite;
pub mod zeros;
pub mod zeta;

pub use baez::{CkMethod, CkRecord, DiffTable};
pub use error::{Error, Result};
pub use mpcore::{BigComplex, BigReal};
pub use precision::PrecisionContext;
pub use riesz::{RieszMethod, RieszSample};
pub use sieve::{build_mobius, mertens_prefix, MobiusTable};
pub use zeros::ZeroCoefficient;
pub use zeta::Estimate;
