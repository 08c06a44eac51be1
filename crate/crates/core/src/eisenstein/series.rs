use super::{bessel_k, gamma, zeta};
use crate::{c64, Complex64, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A point `x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0 && y.is_finite() && x.is_finite()) {
            return Err(Error::Domain(format!("need a point with y > 0, got {x} + {y}i")));
        }
        Ok(Self { x, y })
    }

    pub fn i() -> Self {
        Self { x: 0.0, y: 1.0 }
    }

    pub fn as_complex(&self) -> Complex64 {
        c64(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    /// `z ↦ z + 1`.
    pub fn translate(&self) -> Self {
        Self { x: self.x + 1.0, y: self.y }
    }

    /// `z ↦ −1/z`.
    pub fn invert(&self) -> Self {
        let w = -self.as_complex().inv();
        Self { x: w.re, y: w.im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EisensteinMode {
    LatticeSum,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EisensteinParams {
    pub s: Complex64,
    /// Fourier mode: number of nonconstant coefficients. Lattice mode: the
    /// sum runs over `|cz + d| ≤ n_terms`.
    pub n_terms: usize,
    pub mode: EisensteinMode,
}

impl EisensteinParams {
    pub fn fourier(s: Complex64) -> Self {
        Self { s, n_terms: 30, mode: EisensteinMode::Fourier }
    }

    pub fn lattice(s: Complex64) -> Self {
        Self { s, n_terms: 400, mode: EisensteinMode::LatticeSum }
    }
}

/// `ξ(s) = π^{−s/2} Γ(s/2) ζ(s)`, evaluated on the side `Re s ≥ ½`.
pub fn completed_zeta(s: Complex64) -> Result<Complex64> {
    let s = if s.re < 0.5 { 1.0 - s } else { s };
    if s == c64(1.0, 0.0) {
        return Err(Error::Pole { function: "xi", at: s });
    }
    Ok(c64(PI, 0.0).powc(-0.5 * s) * gamma(0.5 * s)? * zeta(s)?)
}

fn divisor_sigma(n: u64, a: Complex64) -> Complex64 {
    let mut total = Complex64::default();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            total += (a * (d as f64).ln()).exp();
            let e = n / d;
            if e != d {
                total += (a * (e as f64).ln()).exp();
            }
        }
        d += 1;
    }
    total
}

/// `4√y Σ_{n≥1} n^{s−½} σ_{1−2s}(n) K_{s−½}(2πny) cos(2πnx)`.
fn nonconstant_part(s: Complex64, z: UpperHalfPoint, max_terms: usize) -> Result<Complex64> {
    let nu = s - 0.5;
    let mut total = Complex64::default();
    for n in 1..=max_terms as u64 {
        let arg = 2.0 * PI * n as f64 * z.y;
        let k = bessel_k(nu, arg)?;
        let coeff = (nu * (n as f64).ln()).exp() * divisor_sigma(n, 1.0 - 2.0 * s);
        total += coeff * k * (2.0 * PI * n as f64 * z.x).cos();
        // past the turning point K decays like e^{−arg}
        if arg > nu.norm() + 45.0 {
            break;
        }
    }
    Ok(total * 4.0 * z.y.sqrt())
}

fn constant_part_direct(s: Complex64, y: f64) -> Result<Complex64> {
    let ys = (s * y.ln()).exp();
    Ok(completed_zeta(2.0 * s)? * ys + completed_zeta(2.0 - 2.0 * s)? * (y / ys))
}

/// `ξ(2s)y^s + ξ(2−2s)y^{1−s}`: the poles at `s = ½` cancel, so close to
/// `½` the value is taken from a Cauchy integral over a circle around it.
fn constant_part(s: Complex64, y: f64) -> Result<Complex64> {
    let centre = c64(0.5, 0.0);
    if (s - centre).norm() >= 0.05 {
        return constant_part_direct(s, y);
    }
    const M: usize = 64;
    let rho = 0.25;
    let mut acc = Complex64::default();
    for k in 0..M {
        let e = Complex64::from_polar(rho, 2.0 * PI * (k as f64 + 0.5) / M as f64);
        let zeta_k = centre + e;
        acc += constant_part_direct(zeta_k, y)? * e / (zeta_k - s);
    }
    Ok(acc / M as f64)
}

/// Completed series `E*(s, z) = ξ(2s)E(s, z)`, entire apart from simple poles
/// at `s = 0, 1` and invariant under `s ↦ 1 − s`.
pub fn completed_eisenstein(s: Complex64, z: UpperHalfPoint, n_terms: usize) -> Result<Complex64> {
    Ok(constant_part(s, z.y)? + nonconstant_part(s, z, n_terms)?)
}

/// `E(s, z) = Σ_{(c,d)=1, ±} y^s / |cz + d|^{2s}`.
pub fn eisenstein_gl2(params: &EisensteinParams, z: UpperHalfPoint) -> Result<Complex64> {
    let s = params.s;
    match params.mode {
        EisensteinMode::Fourier => match completed_zeta(2.0 * s) {
            // ξ(2s) has a pole at s = ½ while E* stays finite
            Err(Error::Pole { .. }) => Ok(Complex64::default()),
            xi => Ok(completed_eisenstein(s, z, params.n_terms)? / xi?),
        },
        EisensteinMode::LatticeSum => lattice_sum(s, z, params.n_terms as f64),
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Sum over coprime `(c, d)` modulo `±1` with `|cz + d| ≤ radius`, plus the
/// mean-density estimate `(6/π) y^{s−1} R^{2−2s} / (2s − 2)` of the rest.
fn lattice_sum(s: Complex64, z: UpperHalfPoint, radius: f64) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(Error::DivergentSum(s.re));
    }
    let (x, y) = (z.x, z.y);
    let r2 = radius * radius;
    let ys = (s * y.ln()).exp();
    let mut total = ys; // (c, d) = (0, 1)
    let c_max = (radius / y).floor() as i64;
    for c in 1..=c_max {
        let cx = c as f64 * x;
        let room = r2 - (c as f64 * y).powi(2);
        if room < 0.0 {
            break;
        }
        let half = room.sqrt();
        let d_lo = (-cx - half).ceil() as i64;
        let d_hi = (-cx + half).floor() as i64;
        let mut row = Complex64::default();
        for d in d_lo..=d_hi {
            if gcd(c, d) != 1 {
                continue;
            }
            let m2 = (cx + d as f64).powi(2) + (c as f64 * y).powi(2);
            row += (-s * m2.ln()).exp();
        }
        total += ys * row;
    }
    let tail = 6.0 / PI * ((s - 1.0) * y.ln()).exp() * ((2.0 - 2.0 * s) * radius.ln()).exp() / (2.0 * s - 2.0);
    Ok(total + tail)
}

/// `E(1−s, z₀)·E(s, z)` in the classical normalization (Fourier mode).
pub fn eisenstein_product_numerator(z0: UpperHalfPoint, z: UpperHalfPoint, s: Complex64) -> Result<Complex64> {
    let a = eisenstein_gl2(&EisensteinParams::fourier(1.0 - s), z0)?;
    let b = eisenstein_gl2(&EisensteinParams::fourier(s), z)?;
    Ok(a * b)
}

/// `E*(1−s, z₀)·E*(s, z)`, the numerator used on the critical line: it decays
/// like `e^{−π|Im s|}` there.
pub fn completed_product_numerator(
    z0: UpperHalfPoint,
    z: UpperHalfPoint,
    s: Complex64,
    n_terms: usize,
) -> Result<Complex64> {
    Ok(completed_eisenstein(1.0 - s, z0, n_terms)? * completed_eisenstein(s, z, n_terms)?)
}
