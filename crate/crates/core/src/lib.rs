//! Pathwise meromorphic continuation of spectral integrals with movable poles.
//!
//! The integrals handled here have the shape
//!
//! ```text
//!     I(w) = ∫_{Re s = 1/2} N(s) / (λ(s) − λ_w)^ν ds
//! ```
//!
//! with a numerator `N` symmetric under `s ↦ 1 − s` and an eigenvalue map whose
//! difference factors as `λ(s) − λ_w = a·((s − ½)² − (w − ½)² − c)`. The poles
//! `½ ± √((w − ½)² + c)` move with `w`; continuing `I` along a path that drags a
//! pole across the critical line adds a residue term, and whether that happens
//! depends on which side of the branch points `½ ± i√c` the path crosses.
//!
//! Modules:
//! - [`paths`]: piecewise-linear paths, branch-tracked square roots, radicand curves.
//! - [`spectral`]: eigenvalue maps, pole and branch-point solvers.
//! - [`quadrature`]: adaptive Gauss–Kronrod, singular line/planar integrals, regularization.
//! - [`continuation`]: pole tracking, continuation, branching differences.
//! - [`eisenstein`]: zeta, K-Bessel and the SL2(Z) Eisenstein series.
//! - [`verify`]: the property suites behind `branching verify`.

pub mod continuation;
pub mod eisenstein;
pub mod error;
pub mod paths;
pub mod quadrature;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `i`, spelled out once.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Relative distance `|a − b| / max(|b|, floor)`.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}
