//! Integrals over the plane `η ∈ ℝ²` against `1/(‖η‖² + w²)²`.

use super::gk::{integrate, integrate_try, QuadOptions, QuadResult};
use super::line::RegularizedResult;
use crate::{Complex64, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Numerator2dKind {
    Zero,
    /// `exp(−‖η‖²/σ²)`
    Gaussian {
        width: f64,
    },
    /// `‖η‖² exp(−‖η‖²/σ²)`
    GaussianNormSq {
        width: f64,
    },
    /// `exp(−‖η‖²/σ²) cos θ`
    GaussianCosine {
        width: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Numerator2d {
    #[serde(flatten)]
    pub kind: Numerator2dKind,
    #[serde(default = "one")]
    pub scale: Complex64,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl Numerator2d {
    pub fn new(kind: Numerator2dKind) -> Self {
        Self { kind, scale: one() }
    }

    pub fn gaussian(width: f64) -> Self {
        Self::new(Numerator2dKind::Gaussian { width })
    }

    pub fn zero() -> Self {
        Self::new(Numerator2dKind::Zero)
    }

    pub fn value(&self, x: f64, y: f64) -> Complex64 {
        let r2 = x * x + y * y;
        let v = match self.kind {
            Numerator2dKind::Zero => 0.0,
            Numerator2dKind::Gaussian { width } => (-r2 / (width * width)).exp(),
            Numerator2dKind::GaussianNormSq { width } => r2 * (-r2 / (width * width)).exp(),
            Numerator2dKind::GaussianCosine { width } => {
                let c = if r2 == 0.0 { 0.0 } else { x / r2.sqrt() };
                (-r2 / (width * width)).exp() * c
            }
        };
        self.scale * v
    }

    fn polar(&self, r: f64, theta: f64) -> Complex64 {
        self.value(r * theta.cos(), r * theta.sin())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, Numerator2dKind::Zero) || self.scale == Complex64::default()
    }
}

fn require_off_axis(w: Complex64) -> Result<()> {
    if w.re.abs() <= 1e-14 * w.norm().max(1.0) {
        return Err(Error::PoleOnContour(w));
    }
    Ok(())
}

/// `∫_{ℝ²} dη / (‖η‖² + w²)² = π/w²`.
pub fn planar_singular_integral(w: Complex64) -> Result<Complex64> {
    require_off_axis(w)?;
    Ok(PI / (w * w))
}

/// Independent check of [`planar_singular_integral`]: with `u = ‖η‖²` and
/// `u = t/(1−t)` the integral becomes `∫₀¹ π dt / (t + w²(1−t))²`.
pub fn planar_radial_oracle(w: Complex64, tol: f64) -> Result<QuadResult> {
    require_off_axis(w)?;
    let w2 = w * w;
    integrate(|t| PI / (t + w2 * (1.0 - t)).powi(2), 0.0, 1.0, &[], &QuadOptions::with_tol(tol))
}

/// `∮_{‖η‖ = radius} N |dη|`, by adaptive quadrature in the angle.
pub fn circle_average(n: &Numerator2d, radius: f64, tol: f64) -> Result<Complex64> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let opts = QuadOptions { abs_tol: tol * 1e-3, rel_tol: tol, max_intervals: 2000 };
    Ok(integrate(|th| n.polar(radius, th) * radius, 0.0, 2.0 * PI, &[PI], &opts)?.value)
}

/// How the circle value is subtracted from the pointwise numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleNormalization {
    /// Circle integral divided by the circumference.
    #[default]
    Average,
    /// The bare circle integral.
    Integral,
}

pub fn default_disk_radius(w: Complex64) -> f64 {
    50.0 * w.norm().max(1.0)
}

/// `∫_{‖η‖≤T} f(η) dη` in polar coordinates, adaptive in both the radius and the angle.
fn disk_integral<F>(f: F, radius: f64, breaks: &[f64], tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> Complex64,
{
    let inner = QuadOptions { abs_tol: tol * 1e-4, rel_tol: tol * 1e-2, max_intervals: 2000 };
    let outer = QuadOptions::with_tol(tol);
    integrate_try(
        |r| {
            if r == 0.0 {
                return Ok(Complex64::default());
            }
            Ok(integrate(|th| f(r, th), 0.0, 2.0 * PI, &[PI], &inner)?.value * r)
        },
        0.0,
        radius,
        breaks,
        &outer,
    )
}

fn sup_on_circle(n: &Numerator2d, r: f64) -> f64 {
    (0..32).map(|k| n.polar(r, 2.0 * PI * k as f64 / 32.0).norm()).fold(0.0, f64::max)
}

/// `∫_{ℝ²} N(η) / (‖η‖² + w²)² dη` truncated to the disk of radius `T`.
pub fn planar_direct_integral(n: &Numerator2d, w: Complex64, t_max: f64, tol: f64) -> Result<(QuadResult, f64)> {
    require_off_axis(w)?;
    let w2 = w * w;
    let q = disk_integral(|r, th| n.polar(r, th) / (r * r + w2).powi(2), t_max, &[w.norm(), 1.0, 5.0], tol)?;
    let bound = tail_bound(n, w, t_max);
    Ok((q, bound))
}

fn tail_bound(n: &Numerator2d, w: Complex64, t_max: f64) -> f64 {
    let sup = [1.0, 1.5, 2.0].iter().map(|f| sup_on_circle(n, f * t_max)).fold(0.0, f64::max);
    let gap = t_max * t_max - w.norm_sqr();
    if gap <= 0.0 {
        f64::INFINITY
    } else {
        PI * sup / gap
    }
}

/// Subtracts the circle value `J̃` at radius `|w|` and adds it back through the
/// closed form: `∫ (N − J̃)/(‖η‖²+w²)² + J̃·π/w²`.
pub fn planar_regularized_integral(
    n: &Numerator2d,
    w: Complex64,
    t_max: f64,
    tol: f64,
    norm: CircleNormalization,
) -> Result<RegularizedResult> {
    require_off_axis(w)?;
    if !(t_max > 0.0 && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("need T > 0 and tol > 0, got T = {t_max}, tol = {tol}")));
    }
    let rw = w.norm();
    let j = circle_average(n, rw, tol * 1e-2)?;
    let jt = match norm {
        CircleNormalization::Average => j / (2.0 * PI * rw),
        CircleNormalization::Integral => j,
    };
    let w2 = w * w;
    let q = disk_integral(|r, th| (n.polar(r, th) - jt) / (r * r + w2).powi(2), t_max, &[rw, 1.0, 5.0], tol)?;
    // the constant −J̃ also lives outside the disk
    let principal = q.value - jt * PI / (t_max * t_max + w2);
    let singular = jt * planar_singular_integral(w)?;
    Ok(RegularizedResult {
        principal,
        singular,
        total: principal + singular,
        est_error: q.error,
        tail_bound: tail_bound(n, w, t_max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c64, rel_err};

    #[test]
    fn singular_examples() {
        assert!(rel_err(planar_singular_integral(c64(1.0, 0.0)).unwrap(), c64(PI, 0.0)) < 1e-15);
        assert!(rel_err(planar_singular_integral(c64(2.0, 0.0)).unwrap(), c64(PI / 4.0, 0.0)) < 1e-15);
        let w = c64(1.0, 1.0);
        let closed = planar_singular_integral(w).unwrap();
        assert!(rel_err(closed, PI / c64(0.0, 2.0)) < 1e-15);
        assert!(rel_err(planar_radial_oracle(w, 1e-12).unwrap().value, closed) < 1e-10);
        assert!(matches!(planar_singular_integral(c64(0.0, 2.0)), Err(Error::PoleOnContour(_))));
    }

    #[test]
    fn circle_examples() {
        let one = Numerator2d { kind: Numerator2dKind::Gaussian { width: f64::INFINITY }, scale: one() };
        assert!(rel_err(circle_average(&one, 2.0, 1e-12).unwrap(), c64(4.0 * PI, 0.0)) < 1e-13);
        let g = Numerator2d::gaussian(1.0);
        let want = 2.0 * PI * (-1.0f64).exp();
        assert!(rel_err(circle_average(&g, 1.0, 1e-12).unwrap(), c64(want, 0.0)) < 1e-13);
        let gc = Numerator2d::new(Numerator2dKind::GaussianCosine { width: 1.0 });
        assert!(circle_average(&gc, 1.3, 1e-12).unwrap().norm() < 1e-14);
    }

    #[test]
    fn direct_reference_value() {
        let w = c64(1.0, 0.5);
        let (q, bound) = planar_direct_integral(&Numerator2d::gaussian(1.0), w, default_disk_radius(w), 1e-11).unwrap();
        let want = c64(0.16056807410566456603, -0.97135199227753453745);
        assert!(rel_err(q.value, want) < 1e-9, "{}", q.value);
        assert!(bound < 1e-100);
    }

    #[test]
    fn regularized_matches_direct() {
        for n in [
            Numerator2d::gaussian(1.0),
            Numerator2d::new(Numerator2dKind::GaussianNormSq { width: 0.8 }),
            Numerator2d::new(Numerator2dKind::GaussianCosine { width: 1.5 }),
        ] {
            let w = c64(0.7, -0.4);
            let t = default_disk_radius(w);
            let reg = planar_regularized_integral(&n, w, t, 1e-11, CircleNormalization::Average).unwrap();
            let (direct, _) = planar_direct_integral(&n, w, t, 1e-11).unwrap();
            assert!((reg.total - direct.value).norm() < 1e-8 * (1.0 + direct.value.norm()));
            let reg = planar_regularized_integral(&n, w, t, 1e-11, CircleNormalization::Integral).unwrap();
            assert!((reg.total - direct.value).norm() < 1e-8 * (1.0 + direct.value.norm()));
        }
    }

    #[test]
    fn zero_numerator() {
        let reg =
            planar_regularized_integral(&Numerator2d::zero(), c64(1.0, 0.0), 10.0, 1e-10, CircleNormalization::Average)
                .unwrap();
        assert_eq!(reg.total, Complex64::default());
    }
}
