//! Fits, bound checks, identity checks and partial-sum traces built on the
//! evaluators.

pub mod bound;
pub mod fit;
pub mod identities;
pub mod partial;
pub mod quad;
pub mod spectral;

pub use bound::{bound_reports, fit_ckdiff, verify_bound, BoundReport};
pub use fit::{
    count_extrema, estimate_decay_exponent, fit_envelope, fit_extrema, fit_log_log, refined_peaks, FitMethod,
    FitResult, MIN_EXTREMA,
};
pub use identities::{
    abel_integral, abel_integral_check, alternating_sum, alternating_sum_moebius, approx_identity_33,
    approx_identity_34, polya_szego_check, power_series_identity, verify_generating_identity, IdentityCheck,
};
pub use partial::{partial_sum_envelopes, partial_sums, PartialSumTrace, PartialSums};
pub use spectral::{compare_spectral, trivial_zero_term, SpectralComparison};
