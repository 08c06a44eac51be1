//! Adaptive quadrature on the critical line and on the plane, closed-form
//! singular integrals and pole-subtraction regularization.

mod gk;
mod line;
mod planar;

pub use gk::{integrate, integrate_try, QuadOptions, QuadResult};
pub use line::{
    adaptive_line_quadrature, check_symmetry, direct_line_integral, regularized_line_integral, singular_line_integral,
    singular_tail, LineIntegrandSpec, RegularizedResult,
};
pub use planar::{
    circle_average, default_disk_radius, planar_direct_integral, planar_radial_oracle, planar_regularized_integral,
    planar_singular_integral, CircleNormalization, Numerator2d, Numerator2dKind,
};
