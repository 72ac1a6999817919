//! The Riemann zeta function at the arguments this crate needs: even
//! integers (closed form), real `s > 1` and complex `s` in the critical strip
//! (Euler–Maclaurin with term-wise derivative), and `1/ζ` as a Möbius–Dirichlet
//! series. Also hosts the Möbius tail moments shared by the Kummer-type
//! evaluators.

mod dirichlet;
mod em;
mod even;
mod tail;

pub use dirichlet::inv_zeta_dirichlet;
pub use em::{
    zeta_and_deriv_complex, zeta_and_deriv_real, zeta_complex, zeta_deriv_complex, zeta_deriv_real, zeta_real,
    Estimate, MAX_IMAG,
};
pub use even::{zeta_even, ZetaEvenTable, MAX_ZETA_EVEN_INDEX};
pub use tail::{ladder_cutoff, MobiusTail};
pub(crate) use tail::{plan_tail, TailPlan, TailSet};
