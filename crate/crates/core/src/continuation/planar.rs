use crate::quadrature::{
    circle_average, planar_direct_integral, planar_radial_oracle, planar_regularized_integral,
    planar_singular_integral, CircleNormalization, Numerator2d,
};
use crate::{Complex64, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarNoBranchingReport {
    pub w_right: Complex64,
    pub w_left: Complex64,
    /// Regularized value at `w_right`.
    pub start_value: Complex64,
    /// Regularize, cross, unregularize: the continued value at `w_left`.
    pub continued: Complex64,
    /// Direct quadrature at `w_left`.
    pub direct: Complex64,
    /// `J̃·(π/w² − ∫dη/(‖η‖²+w²)²)` at `w_left`: the closed form carried over
    /// from the right minus the singular integral measured on the left.
    pub extra_term: Complex64,
    pub difference: f64,
    pub passed: bool,
}

/// Continues the planar integral from `w_right` across the imaginary axis to
/// the mirrored point `w_left` and compares with direct quadrature there.
pub fn verify_no_branching_planar(
    n: &Numerator2d,
    w_left: Complex64,
    w_right: Complex64,
    t_max: f64,
    tol: f64,
) -> Result<PlanarNoBranchingReport> {
    if !(w_right.re > 0.0 && w_left.re < 0.0) {
        return Err(Error::InvalidArgument(format!("need Re w_right > 0 > Re w_left, got {w_right}, {w_left}")));
    }
    let scale = 1e-12 * (1.0 + w_right.norm());
    if (w_left.re + w_right.re).abs() > scale || (w_left.im.abs() - w_right.im.abs()).abs() > scale {
        return Err(Error::InvalidArgument(format!("{w_left} is not the mirror image of {w_right}")));
    }
    let norm = CircleNormalization::Average;
    // regularize at the start; |w| and hence J̃ are the same on both sides
    let start = planar_regularized_integral(n, w_right, t_max, tol, norm)?;
    let rw = w_right.norm();
    let jt = circle_average(n, rw, tol * 1e-2)? / (2.0 * PI * rw);
    // the subtracted integrand is evaluated at the far side; the singular
    // integral keeps its closed form π/w², continued analytically
    let left = planar_regularized_integral(n, w_left, t_max, tol, norm)?;
    let continued = left.principal + jt * planar_singular_integral(w_left)?;
    let measured = planar_radial_oracle(w_left, tol)?.value;
    let extra_term = jt * (planar_singular_integral(w_left)? - measured);
    let (direct, _) = planar_direct_integral(n, w_left, t_max, tol)?;
    let difference = (continued - direct.value).norm();
    let bound = tol.max(1e-300) * (1.0 + direct.value.norm());
    Ok(PlanarNoBranchingReport {
        w_right,
        w_left,
        start_value: start.total,
        continued,
        direct: direct.value,
        extra_term,
        difference,
        passed: difference <= bound && extra_term.norm() <= bound,
    })
}
