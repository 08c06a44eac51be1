use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the continuation engine and its building blocks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("path pair does not satisfy the crossing-height preconditions: {0}")]
    InvalidPathPair(String),

    #[error("branch-point collision: radicand {radicand} within {tolerance:e} of zero at parameter {parameter}")]
    BranchPointCollision { radicand: Complex64, tolerance: f64, parameter: f64 },

    #[error("radicand {0} lies on the branch cut; track the pole along a path instead")]
    BranchAmbiguity(Complex64),

    #[error("degenerate parametrization: {0}")]
    DegenerateParametrization(String),

    #[error("|alpha| = {0} is on the boundary |alpha| = 1: the curve passes through the origin")]
    BoundaryCrossing(f64),

    #[error("path starts at w = {0}, which is not in Re(w) > 1/2")]
    StartInLeftHalfPlane(Complex64),

    #[error("pole {0} lies on the integration contour")]
    PoleOnContour(Complex64),

    #[error("numerator is not symmetric under s -> 1 - s: max deviation {deviation:e} exceeds {allowed:e}")]
    AsymmetricNumerator { deviation: f64, allowed: f64 },

    #[error("quadrature failed to converge on [{a}, {b}] (error estimate {error:e})")]
    QuadratureFailure { a: f64, b: f64, error: f64 },

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("lattice sum diverges for Re(s) = {0} <= 1")]
    DivergentSum(f64),

    #[error("pole of {function} at s = {at}")]
    Pole { function: &'static str, at: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// `true` for failures of the numerics (as opposed to rejected input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. }
                | Error::BranchPointCollision { .. }
                | Error::PoleOnContour(_)
                | Error::Pole { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
