//! Complex path utilities.
//!
//! A [`WPath`] is a polyline in the complex parameter plane. Sampling it gives
//! [`CurveSamples`]; a radicand evaluated along those samples is followed
//! continuously through the square root by [`track_sqrt`] / [`track_sqrt_along`],
//! which also counts crossings of the principal branch cut (the negative real axis).

mod radicand;
mod sqrt;

pub use radicand::{
    crosses_origin, crosses_origin_with_tol, horizontal_radicand_curve, radicand_curve, radicand_curve_trivial,
    ParabolaCoefficients, RadicandCurve,
};
pub use sqrt::{principal_sqrt, track_sqrt, track_sqrt_along, BranchSign, BranchTrace, TrackOptions};

use crate::{Complex64, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Absolute and relative tolerances shared by the path utilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { abs: 1e-12, rel: 1e-10 }
    }
}

/// A piecewise-linear path in the complex plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WPath {
    points: Vec<Complex64>,
    label: String,
}

impl WPath {
    pub fn new(points: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPath(format!("a path needs at least 2 points, got {}", points.len())));
        }
        if let Some(bad) = points.iter().find(|p| !(p.re.is_finite() && p.im.is_finite())) {
            return Err(Error::InvalidPath(format!("non-finite point {bad}")));
        }
        for (k, pair) in points.windows(2).enumerate() {
            if pair[0] == pair[1] {
                return Err(Error::InvalidPath(format!("points {k} and {} coincide at {}", k + 1, pair[0])));
            }
        }
        Ok(Self { points, label: label.into() })
    }

    /// Parses `"re,im;re,im;..."`.
    pub fn parse(spec: &str, label: impl Into<String>) -> Result<Self> {
        let points =
            spec.split(';').map(str::trim).filter(|s| !s.is_empty()).map(parse_complex).collect::<Result<Vec<_>>>()?;
        Self::new(points, label)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn start(&self) -> Complex64 {
        self.points[0]
    }

    pub fn end(&self) -> Complex64 {
        self.points[self.points.len() - 1]
    }

    /// Point on leg `leg` at local parameter `u ∈ [0, 1]`.
    pub fn point_at(&self, leg: usize, u: f64) -> Complex64 {
        let (a, b) = (self.points[leg], self.points[leg + 1]);
        a + (b - a) * u
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|p| (p[1] - p[0]).norm()).sum()
    }

    /// Imaginary parts at which the path crosses the vertical line `Re w = re`,
    /// with the direction of each crossing (`-1` for right-to-left).
    ///
    /// A vertex lying exactly on the line counts once, when the path actually
    /// passes to the other side.
    pub fn vertical_line_crossings(&self, re: f64) -> Vec<(f64, i32)> {
        let mut out = Vec::new();
        let side = |z: Complex64| (z.re - re).partial_cmp(&0.0).unwrap();
        let mut last_side = std::cmp::Ordering::Equal;
        for pair in self.points.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let (sa, sb) = (side(a), side(b));
            if sa != std::cmp::Ordering::Equal {
                last_side = sa;
            }
            if sb == std::cmp::Ordering::Equal || last_side == std::cmp::Ordering::Equal {
                continue;
            }
            if sb != last_side {
                // crossing happened somewhere between the last strictly-sided point and b
                let t = (re - a.re) / (b.re - a.re);
                let y = if t.is_finite() && (0.0..=1.0).contains(&t) { a.im + t * (b.im - a.im) } else { a.im };
                let dir = if sb == std::cmp::Ordering::Less { -1 } else { 1 };
                out.push((y, dir));
                last_side = sb;
            }
        }
        out
    }
}

/// `"re,im"` or a bare real `"re"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let mut it = s.split(',').map(str::trim);
    let re = it.next().and_then(|v| v.parse::<f64>().ok());
    let im = it.next().map(|v| v.parse::<f64>().ok()).unwrap_or(Some(0.0));
    match (re, im, it.next()) {
        (Some(re), Some(im), None) => Ok(Complex64::new(re, im)),
        _ => Err(Error::InvalidArgument(format!("cannot parse complex number from {s:?}"))),
    }
}

/// Ordered samples of a curve, consecutive samples at most `step_control` apart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct CurveSamples {
    pub samples: Vec<Complex64>,
    pub step_control: f64,
}

impl CurveSamples {
    pub fn new(samples: Vec<Complex64>, step_control: f64) -> Self {
        Self { samples, step_control }
    }

    /// Wraps samples, recording the largest gap actually present.
    pub fn from_samples(samples: Vec<Complex64>) -> Self {
        let step = max_step(&samples);
        Self { samples, step_control: step }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_step(&self) -> f64 {
        max_step(&self.samples)
    }

    /// CSV with header `k,re,im`, values at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,re,im\n");
        for (k, z) in self.samples.iter().enumerate() {
            let _ = writeln!(out, "{k},{:.16e},{:.16e}", z.re, z.im);
        }
        out
    }
}

fn max_step(samples: &[Complex64]) -> f64 {
    samples.windows(2).map(|p| (p[1] - p[0]).norm()).fold(0.0, f64::max)
}

/// Samples `path` so that adjacent samples are at most `step` apart.
///
/// Every vertex is included; each leg of length `L` is cut into `⌈L/step⌉`
/// equal pieces.
pub fn sample_path(path: &WPath, step: f64) -> Result<CurveSamples> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("sampling step must be positive, got {step}")));
    }
    let mut samples = vec![path.start()];
    for leg in 0..path.points.len() - 1 {
        let len = (path.points[leg + 1] - path.points[leg]).norm();
        // guard against 1.0/0.25 landing a hair above 4
        let n = ((len / step) * (1.0 - 4.0 * f64::EPSILON)).ceil().max(1.0) as usize;
        for j in 1..n {
            samples.push(path.point_at(leg, j as f64 / n as f64));
        }
        samples.push(path.points[leg + 1]);
    }
    Ok(CurveSamples::new(samples, step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn two_point_path_at_half_step() {
        let p = WPath::new(vec![c64(1.0, 0.0), c64(1.0, 1.0)], "v").unwrap();
        let s = sample_path(&p, 0.5).unwrap();
        assert_eq!(s.samples, vec![c64(1.0, 0.0), c64(1.0, 0.5), c64(1.0, 1.0)]);
    }

    #[test]
    fn degenerate_path_rejected() {
        assert!(matches!(WPath::new(vec![c64(2.0, 0.0)], ""), Err(Error::InvalidPath(_))));
        assert!(matches!(WPath::new(vec![c64(2.0, 0.0), c64(2.0, 0.0)], ""), Err(Error::InvalidPath(_))));
    }

    #[test]
    fn two_leg_path_sample_count() {
        let p = WPath::new(vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 1.0)], "L").unwrap();
        let s = sample_path(&p, 0.25).unwrap();
        assert_eq!(s.len(), 9);
        assert_eq!(s.samples[4], c64(1.0, 0.0));
        assert!(s.max_step() <= 0.25 + 1e-15);
    }

    #[test]
    fn nonpositive_step_rejected() {
        let p = WPath::new(vec![c64(0.0, 0.0), c64(1.0, 0.0)], "").unwrap();
        assert!(sample_path(&p, 0.0).is_err());
        assert!(sample_path(&p, -1.0).is_err());
    }

    #[test]
    fn parse_path_spec() {
        let p = WPath::parse("1,0; 0.25,2 ;0.25,2.5", "x").unwrap();
        assert_eq!(p.points(), &[c64(1.0, 0.0), c64(0.25, 2.0), c64(0.25, 2.5)]);
        assert!(WPath::parse("1,0;abc", "x").is_err());
    }

    #[test]
    fn crossings_of_the_critical_line() {
        let p = WPath::parse("1,0.3;1,2;0.25,2;0.25,2.5", "").unwrap();
        let c = p.vertical_line_crossings(0.5);
        assert_eq!(c, vec![(2.0, -1)]);
        let back = WPath::parse("1,1;0,1;1,-1", "").unwrap();
        assert_eq!(back.vertical_line_crossings(0.5).len(), 2);
        let touching = WPath::parse("1,1;0.5,1;1,2", "").unwrap();
        assert!(touching.vertical_line_crossings(0.5).is_empty());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = CurveSamples::from_samples(vec![c64(1.0, 0.0), c64(0.5, -1.0)]);
        let csv = s.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "k,re,im");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("1,5.0000000000000000e-1,"));
    }
}
