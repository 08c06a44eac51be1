//! Integrals over the critical line `s = ½ + iτ` (so `ds = i dτ`).

use super::gk::{integrate_try, QuadOptions, QuadResult};
use crate::continuation::Numerator;
use crate::paths::principal_sqrt;
use crate::spectral::SpectralModel;
use crate::{c64, Complex64, Error, Result, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Extra break points at `±10^k` so long truncations are resolved near 0 first.
fn decade_breaks(t_max: f64, extra: &[f64]) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut d = 1.0;
    while d < t_max {
        b.push(d);
        b.push(-d);
        d *= 10.0;
    }
    b.extend(extra.iter().copied().filter(|x| x.is_finite()));
    b
}

/// `∫_{−T}^{T} f(½ + iτ) i dτ`, break points given as values of `τ`.
pub fn adaptive_line_quadrature<F>(mut f: F, t_max: f64, tol: f64, breaks: &[f64]) -> Result<QuadResult>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    if !(t_max > 0.0 && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("need T > 0 and tol > 0, got T = {t_max}, tol = {tol}")));
    }
    let br = decade_breaks(t_max, breaks);
    let r = integrate_try(|tau| Ok(f(c64(0.5, tau))? * I), -t_max, t_max, &br, &QuadOptions::with_tol(tol))?;
    Ok(r)
}

fn pole_off_line(s_star: Complex64) -> Result<()> {
    if (s_star.re - 0.5).abs() <= 1e-12 * (1.0 + s_star.norm()) {
        return Err(Error::PoleOnContour(s_star));
    }
    Ok(())
}

/// Closed form of `∫_{½+iℝ} ds / (λ(s) − λ_w)^ν` in terms of either pole `s*`.
pub fn singular_line_integral(model: &SpectralModel, s_star: Complex64) -> Result<Complex64> {
    pole_off_line(s_star)?;
    let a = model.a;
    let d = 2.0 * s_star - 1.0;
    let right = s_star.re > 0.5;
    match model.nu {
        1 => Ok(if right { 2.0 * PI * I / (a * (1.0 - 2.0 * s_star)) } else { 2.0 * PI * I / (a * d) }),
        2 => {
            let v = 4.0 * PI * I / (a * a * d * d * d);
            Ok(if right { v } else { -v })
        }
        nu => Err(Error::InvalidModel(format!("pole order {nu} is not supported"))),
    }
}

/// `∫_T^∞ dτ / (τ² + R)^ν` for `ν ∈ {1, 2}`.
fn tail_integral(radicand: Complex64, t_max: f64, nu: u32) -> Complex64 {
    let t = t_max;
    let q = radicand / (t * t);
    if q.norm() < 1e-3 {
        // series in R/T²
        let mut acc = Complex64::default();
        let mut p = c64(1.0, 0.0);
        for k in 0..8 {
            let kf = k as f64;
            let coeff = if nu == 1 { 1.0 / (2.0 * kf + 1.0) } else { (kf + 1.0) / (2.0 * kf + 3.0) };
            acc += p * coeff;
            p *= -q;
        }
        return if nu == 1 { acc / t } else { acc / (t * t * t) };
    }
    let r = principal_sqrt(radicand);
    let at = (r / t).atan();
    if nu == 1 {
        at / r
    } else {
        at / (2.0 * r * r * r) - t / (2.0 * r * r * (t * t + radicand))
    }
}

/// `∫_{|τ|>T} ds / (λ(s) − λ_w)^ν`.
pub fn singular_tail(model: &SpectralModel, w: Complex64, t_max: f64) -> Complex64 {
    let r2 = model.radicand(w);
    let a = model.a;
    // λ(s) − λ_w = −a(τ² + R) on the line
    let one_side = tail_integral(r2, t_max, model.nu);
    if model.nu == 1 {
        -2.0 * I * one_side / a
    } else {
        2.0 * I * one_side / (a * a)
    }
}

/// Integrand data for the spectral line integral at a fixed `w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineIntegrandSpec {
    pub numerator: Numerator,
    pub model: SpectralModel,
    pub w: Complex64,
    pub t_max: f64,
    pub tol: f64,
}

impl LineIntegrandSpec {
    pub fn new(numerator: Numerator, model: SpectralModel, w: Complex64, t_max: f64, tol: f64) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) || !(tol > 0.0) {
            return Err(Error::InvalidArgument(format!("need T > 0 and tol > 0, got T = {t_max}, tol = {tol}")));
        }
        if model.is_planar() {
            return Err(Error::InvalidModel("line integrals need a line model".into()));
        }
        Ok(Self { numerator, model, w, t_max, tol })
    }

    fn denominator(&self, s: Complex64) -> Complex64 {
        let d = self.model.denominator_base(s, self.w);
        if self.model.nu == 2 {
            d * d
        } else {
            d
        }
    }

    /// `τ`-coordinates of both poles, used as break points.
    fn pole_breaks(&self) -> Vec<f64> {
        let r = principal_sqrt(self.model.radicand(self.w));
        vec![r.im, -r.im]
    }

    /// Rough bound on what the numerator contributes beyond `|τ| = T`.
    fn tail_bound(&self) -> Result<f64> {
        if self.numerator.constant_value().is_some() {
            return Ok(0.0);
        }
        let t = self.t_max;
        let mut sup = 0.0f64;
        for f in [1.0, 1.25, 1.5, 2.0, 3.0] {
            sup = sup.max(self.numerator.value(c64(0.5, f * t))?.norm());
            sup = sup.max(self.numerator.value(c64(0.5, -f * t))?.norm());
        }
        let r = self.model.radicand(self.w).norm();
        if t * t <= 2.0 * r {
            return Ok(f64::INFINITY);
        }
        let nu = self.model.nu as i32;
        Ok(2.0 * sup * t / ((2 * nu - 1) as f64 * self.model.a.powi(nu) * (t * t - r).powi(nu)))
    }
}

/// Result of a pole-subtracted line integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularizedResult {
    pub principal: Complex64,
    pub singular: Complex64,
    pub total: Complex64,
    pub est_error: f64,
    pub tail_bound: f64,
}

/// `∫ N(s) / (λ(s) − λ_w)^ν ds` by direct quadrature over `|τ| ≤ T`; for a
/// constant numerator the exact tail is added.
pub fn direct_line_integral(spec: &LineIntegrandSpec) -> Result<QuadResult> {
    let mut r = adaptive_line_quadrature(
        |s| Ok(spec.numerator.value(s)? / spec.denominator(s)),
        spec.t_max,
        spec.tol,
        &spec.pole_breaks(),
    )?;
    if let Some(c) = spec.numerator.constant_value() {
        r.value += c * singular_tail(&spec.model, spec.w, spec.t_max);
    }
    Ok(r)
}

/// Rejects numerators that are not symmetric under `s ↦ 1 − s` on the line.
pub fn check_symmetry(numerator: &Numerator, t_max: f64, tol: f64) -> Result<()> {
    check_symmetry_with(|s| numerator.value(s), t_max, tol)
}

/// Rejects `f` when `max |f(½+iτ) − f(½−iτ)| > tol·max|f|` on 129 samples of
/// `τ ∈ [0, min(T, 50)]`.
pub fn check_symmetry_with<F>(f: F, t_max: f64, tol: f64) -> Result<()>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let t = t_max.min(50.0);
    let (mut dev, mut big) = (0.0f64, 0.0f64);
    for k in 0..=128 {
        let tau = t * k as f64 / 128.0;
        let (a, b) = (f(c64(0.5, tau))?, f(c64(0.5, -tau))?);
        dev = dev.max((a - b).norm());
        big = big.max(a.norm()).max(b.norm());
    }
    let allowed = tol * big.max(f64::MIN_POSITIVE);
    if dev > allowed {
        return Err(Error::AsymmetricNumerator { deviation: dev, allowed });
    }
    Ok(())
}

/// Splits the line integral at the pole `s*` into a quadrature of
/// `(N(s) − N(s*)) / (λ(s) − λ_w)^ν` and `N(s*)` times the closed form.
pub fn regularized_line_integral(spec: &LineIntegrandSpec, s_star: Complex64) -> Result<RegularizedResult> {
    pole_off_line(s_star)?;
    let u = s_star - 0.5;
    let r2 = spec.model.radicand(spec.w);
    if (u * u - r2).norm() > 1e-8 * (1.0 + r2.norm()) {
        return Err(Error::InvalidArgument(format!("{s_star} is not a pole at w = {}", spec.w)));
    }
    check_symmetry(&spec.numerator, spec.t_max, spec.tol)?;
    let n_star = spec.numerator.value(s_star)?;
    let quad = adaptive_line_quadrature(
        |s| Ok((spec.numerator.value(s)? - n_star) / spec.denominator(s)),
        spec.t_max,
        spec.tol,
        &spec.pole_breaks(),
    )?;
    let n_far = spec.numerator.constant_value().unwrap_or_default();
    let principal = quad.value + (n_far - n_star) * singular_tail(&spec.model, spec.w, spec.t_max);
    let singular = n_star * singular_line_integral(&spec.model, s_star)?;
    Ok(RegularizedResult {
        principal,
        singular,
        total: principal + singular,
        est_error: quad.error,
        tail_bound: spec.tail_bound()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rel_err;

    fn gauss_half() -> Numerator {
        Numerator::gaussian(1.0).unwrap()
    }

    #[test]
    fn gl2_denominator_at_w_one() {
        let r = adaptive_line_quadrature(|s| Ok((s * (s - 1.0)).inv()), 1e4, 1e-12, &[]).unwrap();
        let exact = -4.0 * I * (2.0e4f64).atan();
        assert!(rel_err(r.value, exact) < 1e-10);
        assert!(rel_err(r.value, -2.0 * PI * I) < 1e-3);
    }

    #[test]
    fn zero_and_gaussian() {
        let r = adaptive_line_quadrature(|_| Ok(Complex64::default()), 10.0, 1e-10, &[]).unwrap();
        assert_eq!(r.value, Complex64::default());
        let r = adaptive_line_quadrature(|s| Ok((-(s.im * s.im)).exp().into()), 40.0, 1e-12, &[]).unwrap();
        assert!(rel_err(r.value, I * PI.sqrt()) < 1e-12);
    }

    #[test]
    fn singular_examples() {
        let gl2 = SpectralModel::gl2q();
        assert!(rel_err(singular_line_integral(&gl2, c64(1.0, 0.0)).unwrap(), -2.0 * PI * I) < 1e-15);
        let w = c64(0.2, 1.0);
        assert!(rel_err(singular_line_integral(&gl2, w).unwrap(), 2.0 * PI * I / (2.0 * w - 1.0)) < 1e-15);
        assert!(matches!(singular_line_integral(&gl2, c64(0.5, 3.0)), Err(Error::PoleOnContour(_))));
    }

    #[test]
    fn closed_forms_match_quadrature_with_tails() {
        for (m, w) in [
            (SpectralModel::hilbert_with_norm(1.0).unwrap(), c64(1.2, 0.7)),
            (SpectralModel::gl2q(), c64(0.8, -0.3)),
            (SpectralModel::gl3_cuspidal(c64(0.0, 0.0)).unwrap(), c64(1.0, 0.0)),
            (SpectralModel::gl3_cuspidal(c64(2.0, 0.0)).unwrap(), c64(0.7, 1.5)),
        ] {
            let spec = LineIntegrandSpec::new(Numerator::constant(c64(1.0, 0.0)), m.clone(), w, 1e3, 1e-12).unwrap();
            let num = direct_line_integral(&spec).unwrap().value;
            let s_star = m.poles(w).unwrap().s_plus;
            let closed = singular_line_integral(&m, s_star).unwrap();
            assert!(rel_err(num, closed) < 1e-9, "{m:?} {w}: {num} vs {closed}");
            // the other pole gives the same value
            let other = singular_line_integral(&m, 1.0 - s_star).unwrap();
            assert!(rel_err(other, closed) < 1e-14);
        }
    }

    #[test]
    fn direct_reference_values() {
        let h = SpectralModel::hilbert_with_norm(1.0).unwrap();
        let cases = [
            (h.clone(), c64(1.2, 0.0), c64(0.0, -0.96267422214315416194)),
            (h, c64(1.2, 0.7), c64(-0.63485421309371511227, -0.82276689143980222452)),
            (
                SpectralModel::gl3_cuspidal(c64(2.0, 0.0)).unwrap(),
                c64(0.9, 0.4),
                c64(0.0060982456671617759377, 0.014813487732540163463),
            ),
        ];
        for (m, w, want) in cases {
            let spec = LineIntegrandSpec::new(gauss_half(), m, w, 12.0, 1e-12).unwrap();
            let got = direct_line_integral(&spec).unwrap().value;
            assert!(rel_err(got, want) < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn regularized_matches_direct() {
        let h = SpectralModel::hilbert_with_norm(1.0).unwrap();
        let w = c64(1.2, 0.0);
        let spec = LineIntegrandSpec::new(gauss_half(), h.clone(), w, 12.0, 1e-12).unwrap();
        let reg = regularized_line_integral(&spec, h.poles(w).unwrap().s_plus).unwrap();
        let direct = direct_line_integral(&spec).unwrap().value;
        assert!(rel_err(reg.total, direct) < 1e-8);
        assert_eq!(reg.total, reg.principal + reg.singular);
        assert!(reg.tail_bound < 1e-30);
    }

    #[test]
    fn constant_numerator_regularizes_to_the_closed_form() {
        let m = SpectralModel::gl2q();
        let w = c64(1.5, 0.0);
        let spec = LineIntegrandSpec::new(Numerator::constant(c64(1.0, 0.0)), m, w, 100.0, 1e-10).unwrap();
        let reg = regularized_line_integral(&spec, w).unwrap();
        assert!(reg.principal.norm() < 1e-14);
        assert!(rel_err(reg.total, -PI * I) < 1e-14);
    }

    #[test]
    fn asymmetric_numerator_rejected() {
        use crate::eisenstein::{eisenstein_gl2, EisensteinParams, UpperHalfPoint};
        let z0 = UpperHalfPoint::i();
        let z = UpperHalfPoint::new(0.2, 1.3).unwrap();
        // E(s, z0)·E(s, z) without the reflection in one factor
        let prod = |s| {
            Ok(eisenstein_gl2(&EisensteinParams::fourier(s), z0)? * eisenstein_gl2(&EisensteinParams::fourier(s), z)?)
        };
        let e = check_symmetry_with(prod, 10.0, 1e-8);
        assert!(matches!(e, Err(Error::AsymmetricNumerator { .. })), "{e:?}");
        // the completed product is, even with z0 != z
        let m = SpectralModel::gl2q();
        let w = c64(1.3, 0.0);
        let spec = LineIntegrandSpec::new(Numerator::eisenstein_product(z0, z, 30), m, w, 10.0, 1e-8).unwrap();
        assert!(regularized_line_integral(&spec, w).is_ok());
    }
}
