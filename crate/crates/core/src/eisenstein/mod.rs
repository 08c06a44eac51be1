//! Riemann zeta, complex Gamma, K-Bessel and the real-analytic Eisenstein
//! series for SL2(Z).

mod bessel;
mod gamma;
mod series;
mod zeta;

pub use bessel::bessel_k;
pub use gamma::gamma;
pub use series::{
    completed_eisenstein, completed_product_numerator, completed_zeta, eisenstein_gl2, eisenstein_product_numerator,
    EisensteinMode, EisensteinParams, UpperHalfPoint,
};
pub use zeta::zeta;
