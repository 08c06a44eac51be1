use super::CurveSamples;
use crate::{c64, Complex64, Error, Result};
use serde::{Deserialize, Serialize};

/// Coefficients of the parabola `x = a2·y² + c0` traced by a radicand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolaCoefficients {
    pub a2: f64,
    pub c0: f64,
}

impl ParabolaCoefficients {
    pub fn x_of(&self, y: f64) -> f64 {
        self.a2 * y * y + self.c0
    }

    /// Relative residual of `z` against the parabola equation.
    pub fn residual(&self, z: Complex64) -> f64 {
        let x = self.x_of(z.im);
        (z.re - x).abs() / (1.0 + z.re.abs().max(x.abs()))
    }

    /// The two intercepts with the imaginary axis, when `c0 < 0`.
    pub fn imaginary_intercepts(&self) -> Option<(f64, f64)> {
        (self.c0 < 0.0 && self.a2 > 0.0).then(|| {
            let y = (-self.c0 / self.a2).sqrt();
            (-y, y)
        })
    }
}

/// Samples of the radicand swept by a horizontal `w`-path plus its parabola.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadicandCurve {
    pub sigma: Vec<f64>,
    pub samples: CurveSamples,
    pub parabola: ParabolaCoefficients,
}

/// Radicand `(w − ½)² + offset` for `w = ½ + σ + i·height`, with `σ` running
/// from `sigma_range.0` to `sigma_range.1`.
///
/// The curve is `x = σ² − height² + offset`, `y = 2σ·height`, i.e. the
/// parabola `x = y²/(4 height²) + offset − height²`.
pub fn horizontal_radicand_curve(
    height: f64,
    offset: f64,
    sigma_range: (f64, f64),
    step: f64,
) -> Result<RadicandCurve> {
    if height == 0.0 || !height.is_finite() {
        return Err(Error::DegenerateParametrization(
            "a horizontal path at height 0 keeps the radicand on the real axis".into(),
        ));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let (s0, s1) = sigma_range;
    if !(s0.is_finite() && s1.is_finite()) || s0 == s1 {
        return Err(Error::InvalidArgument(format!("empty sigma range {sigma_range:?}")));
    }
    // |Δr| ≤ 2M·Δσ + Δσ² with M = max|σ| + |height|
    let m = s0.abs().max(s1.abs()) + height.abs();
    let dsigma = -m + (m * m + step).sqrt();
    let n = ((s1 - s0).abs() / dsigma).ceil().max(1.0) as usize;
    let sigma: Vec<f64> = (0..=n).map(|k| s0 + (s1 - s0) * k as f64 / n as f64).collect();
    let samples = sigma.iter().map(|&s| c64(s * s - height * height + offset, 2.0 * s * height)).collect();
    Ok(RadicandCurve {
        sigma,
        samples: CurveSamples::new(samples, step),
        parabola: ParabolaCoefficients { a2: 1.0 / (4.0 * height * height), c0: offset - height * height },
    })
}

/// Radicand curve for a nontrivial character: `w = ½ + σ + i·α‖t‖`, offset `‖t‖²`.
pub fn radicand_curve(t_norm: f64, alpha: f64, sigma_range: (f64, f64), step: f64) -> Result<RadicandCurve> {
    if !(t_norm > 0.0) {
        return Err(Error::DegenerateParametrization(format!("‖t‖ must be positive, got {t_norm}")));
    }
    if alpha == 0.0 {
        return Err(Error::DegenerateParametrization("alpha = 0 collapses the curve to the real axis".into()));
    }
    horizontal_radicand_curve(alpha * t_norm, t_norm * t_norm, sigma_range, step)
}

/// Trivial-character variant: `w = ½ + σ + i·t_o`, no offset.
pub fn radicand_curve_trivial(t_o: f64, sigma_range: (f64, f64), step: f64) -> Result<RadicandCurve> {
    horizontal_radicand_curve(t_o, 0.0, sigma_range, step)
}

/// Whether a horizontal crossing at height `α‖t‖` sends the radicand around
/// the origin: true iff `|α| > 1`.
pub fn crosses_origin(t_norm: f64, alpha: f64) -> Result<bool> {
    crosses_origin_with_tol(t_norm, alpha, 1e-9)
}

pub fn crosses_origin_with_tol(t_norm: f64, alpha: f64, tol: f64) -> Result<bool> {
    if !(t_norm > 0.0) || alpha == 0.0 {
        return Err(Error::DegenerateParametrization(format!(
            "need ‖t‖ > 0 and alpha ≠ 0, got ‖t‖ = {t_norm}, alpha = {alpha}"
        )));
    }
    if (alpha.abs() - 1.0).abs() <= tol {
        return Err(Error::BoundaryCrossing(alpha));
    }
    Ok(alpha.abs() > 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{track_sqrt, BranchSign, TrackOptions};

    #[test]
    fn alpha_one_parabola_through_origin() {
        let c = radicand_curve(1.0, 1.0, (0.0, -1.0), 0.01).unwrap();
        assert_eq!(c.parabola, ParabolaCoefficients { a2: 0.25, c0: 0.0 });
        assert_eq!(c.sigma[0], 0.0);
        assert_eq!(c.samples.samples[0], c64(0.0, 0.0));
    }

    #[test]
    fn trivial_character_parabola_matches_factored_form() {
        let t_o = 0.7_f64;
        let c = radicand_curve_trivial(t_o, (2.0, -2.0), 0.01).unwrap();
        for z in &c.samples.samples {
            let factored = (z.im - 2.0 * t_o * t_o) * (z.im + 2.0 * t_o * t_o) / (4.0 * t_o * t_o);
            assert!((z.re - factored).abs() <= 1e-12 * (1.0 + z.re.abs()));
        }
    }

    #[test]
    fn alpha_two_point_at_sigma_one() {
        let c = radicand_curve(1.0, 2.0, (1.0, -1.0), 0.05).unwrap();
        assert_eq!(c.samples.samples[0], c64(-2.0, 4.0));
        assert_eq!(c.parabola.c0, -3.0);
    }

    #[test]
    fn every_sample_is_on_the_parabola() {
        for (t, a) in [(1.0, 2.0), (3.0, -1.5), (0.4, 0.3)] {
            let c = radicand_curve(t, a, (2.0, -2.0), 0.02).unwrap();
            assert!(c.samples.max_step() <= 0.02 * (1.0 + 1e-12));
            for z in &c.samples.samples {
                assert!(c.parabola.residual(*z) <= 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(radicand_curve(1.0, 0.0, (1.0, -1.0), 0.1), Err(Error::DegenerateParametrization(_))));
        assert!(matches!(crosses_origin(1.0, 1.0), Err(Error::BoundaryCrossing(_))));
        assert!(crosses_origin(0.0, 2.0).is_err());
    }

    #[test]
    fn criterion_examples() {
        assert!(!crosses_origin(1.0, 0.5).unwrap());
        assert!(crosses_origin(1.0, 2.0).unwrap());
        assert!(crosses_origin(3.0, -1.5).unwrap());
        let c = radicand_curve(3.0, -1.5, (3.0, -3.0), 0.05).unwrap();
        let t = track_sqrt(&c.samples, BranchSign::Plus, &TrackOptions::default()).unwrap();
        assert_eq!(t.cut_crossings.rem_euclid(2), 1);
    }

    #[test]
    fn alpha_two_crosses_the_cut_once() {
        let c = radicand_curve(1.0, 2.0, (1.0, -1.0), 0.01).unwrap();
        let t = track_sqrt(&c.samples, BranchSign::Plus, &TrackOptions::default()).unwrap();
        assert_eq!(t.cut_crossings.abs(), 1);
        assert_eq!(t.final_sign, BranchSign::Minus);
    }
}
