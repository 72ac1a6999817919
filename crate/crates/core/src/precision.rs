//! Working-precision policy.
//!
//! A [`PrecisionContext`] fixes the number of decimal digits a caller wants
//! in the final answer. Evaluators add `guard_digits` internally and may raise
//! the precision further to absorb cancellation (the raw Riesz series and the
//! binomial form of `c_k` both do). `series_tail_factor` scales every
//! truncation length chosen from an asymptotic estimate.

use rug::Float;

use crate::error::{domain, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionContext {
    digits: u32,
    guard_digits: u32,
    series_tail_factor: f64,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { digits: 40, guard_digits: 10, series_tail_factor: 2.0 }
    }
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 15;
    pub const MIN_GUARD: u32 = 10;

    pub fn new(digits: u32) -> Result<Self> {
        Self::with_options(digits, 10, 2.0)
    }

    pub fn with_options(digits: u32, guard_digits: u32, series_tail_factor: f64) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(domain!("precision of {digits} digits is below the minimum of {}", Self::MIN_DIGITS));
        }
        if guard_digits < Self::MIN_GUARD {
            return Err(domain!("{guard_digits} guard digits is below the minimum of {}", Self::MIN_GUARD));
        }
        if !(series_tail_factor.is_finite() && series_tail_factor >= 1.0) {
            return Err(domain!("series tail factor must be a finite number >= 1, got {series_tail_factor}"));
        }
        Ok(PrecisionContext { digits, guard_digits, series_tail_factor })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn series_tail_factor(&self) -> f64 {
        self.series_tail_factor
    }

    /// Digits carried internally: requested digits plus guard.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard_digits
    }

    /// Binary precision corresponding to [`working_digits`](Self::working_digits).
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// A context carrying `extra` more requested digits.
    pub fn elevated(&self, extra: u32) -> Self {
        PrecisionContext { digits: self.digits + extra, ..*self }
    }

    /// `10^-(working digits)` as an `f64`-free exponent; convenient for
    /// truncation rules expressed in log10.
    pub fn log10_tolerance(&self) -> f64 {
        -(self.working_digits() as f64)
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 8
}

/// Precision used for error estimates; they only need a couple of digits but
/// must not underflow, which MPFR's exponent range guarantees.
pub(crate) const ERR_BITS: u32 = 64;

pub(crate) fn err_float<T>(value: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(ERR_BITS, value)
}
