//! Eigenvalue maps for the continuous-spectrum families, their pole and
//! branch-point solvers, and grossencharacter parameters.

mod descriptor;

pub use descriptor::{ModelDescriptor, TfValue};

use crate::paths::principal_sqrt;
use crate::{c64, Complex64, Error, Result};
use serde::{Deserialize, Serialize};

/// Archimedean parameters `t = (t_1, …, t_n)` of an unramified grossencharacter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrossencharParams {
    t: Vec<f64>,
}

impl GrossencharParams {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::InvalidCharacter("need at least one parameter".into()));
        }
        if t.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidCharacter(format!("non-finite parameter in {t:?}")));
        }
        let sum: f64 = t.iter().sum();
        let scale: f64 = t.iter().map(|x| x.abs()).sum();
        if sum.abs() > 1e-14 * scale.max(1.0) {
            return Err(Error::InvalidCharacter(format!("parameters must sum to zero, sum = {sum:e}")));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    /// `(1/n) Σ t_j²`.
    pub fn norm_sq(&self) -> f64 {
        self.t.iter().map(|x| x * x).sum::<f64>() / self.t.len() as f64
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_trivial(&self) -> bool {
        self.t.iter().all(|&x| x == 0.0)
    }
}

/// Characters of a real quadratic field trivial on the unit `ε`:
/// `t = (πm/log ε, −πm/log ε)`.
pub fn grossenchar_from_unit(log_eps: f64, m: i64) -> Result<GrossencharParams> {
    if !(log_eps > 0.0 && log_eps.is_finite()) {
        return Err(Error::InvalidCharacter(format!("log ε must be positive, got {log_eps}")));
    }
    let t1 = std::f64::consts::PI * m as f64 / log_eps;
    Ok(GrossencharParams { t: vec![t1, -t1] })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelKind {
    Gl2Q,
    HilbertMaass(GrossencharParams),
    /// Spectral parameter of the inducing cusp form: real, or in `−i[0, ½]`.
    Gl3Cuspidal {
        t_f: Complex64,
    },
    Gl3MinParabolic {
        rho_norm_sq: f64,
    },
}

/// An eigenvalue family `λ(s)` together with the data of
/// `λ(s) − λ_w = a·((s − ½)² − (w − ½)² − c)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralModel {
    pub kind: ModelKind,
    pub a: f64,
    pub c: f64,
    pub nu: u32,
}

/// The two poles `½ ± √((w − ½)² + c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolePair {
    pub s_plus: Complex64,
    pub s_minus: Complex64,
}

impl SpectralModel {
    pub fn gl2q() -> Self {
        Self { kind: ModelKind::Gl2Q, a: 1.0, c: 0.0, nu: 1 }
    }

    pub fn hilbert(t: GrossencharParams) -> Self {
        let c = t.norm_sq();
        Self { kind: ModelKind::HilbertMaass(t), a: 1.0, c, nu: 1 }
    }

    /// Hilbert model with `t = (τ, −τ)`, so that `‖t‖ = |τ|`.
    pub fn hilbert_with_norm(norm: f64) -> Result<Self> {
        Ok(Self::hilbert(GrossencharParams::new(vec![norm, -norm])?))
    }

    pub fn gl3_cuspidal(t_f: Complex64) -> Result<Self> {
        let ok_real = t_f.im == 0.0 && t_f.re.is_finite();
        let ok_imag = t_f.re == 0.0 && (-0.5..=0.0).contains(&t_f.im);
        if !(ok_real || ok_imag) {
            return Err(Error::InvalidModel(format!("t_f must be real or in −i[0, ½], got {t_f}")));
        }
        let c = ((t_f * t_f).re + 0.25) / 3.0;
        Ok(Self { kind: ModelKind::Gl3Cuspidal { t_f }, a: 6.0, c, nu: 2 })
    }

    pub fn gl3_min_parabolic(rho_norm_sq: f64) -> Result<Self> {
        if !(rho_norm_sq >= 0.0 && rho_norm_sq.is_finite()) {
            return Err(Error::InvalidModel(format!("‖ρ‖² must be non-negative, got {rho_norm_sq}")));
        }
        Ok(Self { kind: ModelKind::Gl3MinParabolic { rho_norm_sq }, a: 1.0, c: 0.0, nu: 2 })
    }

    pub fn is_planar(&self) -> bool {
        matches!(self.kind, ModelKind::Gl3MinParabolic { .. })
    }

    fn require_line(&self, what: &str) -> Result<()> {
        if self.is_planar() {
            Err(Error::InvalidModel(format!("{what} is not defined for the minimal-parabolic model")))
        } else {
            Ok(())
        }
    }

    /// `λ(s)` in the literal form of each family.
    pub fn eigenvalue(&self, s: Complex64) -> Result<Complex64> {
        match &self.kind {
            ModelKind::Gl2Q => Ok(s * (s - 1.0)),
            ModelKind::HilbertMaass(p) => {
                let sum: Complex64 = p
                    .t()
                    .iter()
                    .map(|&t| {
                        let u = s + c64(0.0, t);
                        u * (u - 1.0)
                    })
                    .sum();
                Ok(sum / p.n() as f64)
            }
            ModelKind::Gl3Cuspidal { t_f } => {
                let sf = c64(0.5, 0.0) + crate::I * t_f;
                Ok(2.0 * (sf * (sf - 1.0) + 3.0 * s * (s - 1.0)))
            }
            ModelKind::Gl3MinParabolic { .. } => {
                Err(Error::InvalidModel("use eigenvalue_minparabolic_power/root or eigenvalue_planar".into()))
            }
        }
    }

    /// `λ_w`: `w(w−1)` scaled by `a` on the line models, `w² − ‖ρ‖²` for the planar one.
    pub fn lambda_w(&self, w: Complex64) -> Complex64 {
        match &self.kind {
            ModelKind::Gl3MinParabolic { rho_norm_sq } => w * w - rho_norm_sq,
            _ => self.a * w * (w - 1.0),
        }
    }

    /// Planar eigenvalue `−(‖η‖² + ‖ρ‖²)`.
    pub fn eigenvalue_planar(&self, eta_norm_sq: f64) -> Result<f64> {
        match self.kind {
            ModelKind::Gl3MinParabolic { rho_norm_sq } => Ok(-(eta_norm_sq + rho_norm_sq)),
            _ => Err(Error::InvalidModel("planar eigenvalue needs the minimal-parabolic model".into())),
        }
    }

    /// `(w − ½)² + c`.
    pub fn radicand(&self, w: Complex64) -> Complex64 {
        let u = w - 0.5;
        u * u + self.c
    }

    /// `λ(s) − λ_w` in factored form.
    pub fn denominator_base(&self, s: Complex64, w: Complex64) -> Complex64 {
        let u = s - 0.5;
        self.a * (u * u - self.radicand(w))
    }

    pub fn poles(&self, w: Complex64) -> Result<PolePair> {
        self.require_line("poles")?;
        let r = self.radicand(w);
        if r.im == 0.0 && r.re < 0.0 {
            return Err(Error::BranchAmbiguity(r));
        }
        let root = principal_sqrt(r);
        Ok(PolePair { s_plus: 0.5 + root, s_minus: 0.5 - root })
    }

    /// `½ ± i√c`.
    pub fn branch_points(&self) -> Result<(Complex64, Complex64)> {
        self.require_line("branch points")?;
        let h = self.c.max(0.0).sqrt();
        Ok((c64(0.5, h), c64(0.5, -h)))
    }
}

/// Casimir eigenvalue for the character `|a₁|^{s1}|a₂|^{s2}|a₃|^{s3}`, `s1+s2+s3 = 0`.
pub fn eigenvalue_minparabolic_power(s1: Complex64, s2: Complex64, s3: Complex64) -> Result<Complex64> {
    let trace = s1 + s2 + s3;
    let scale = 1.0 + s1.norm() + s2.norm() + s3.norm();
    if trace.norm() > 1e-12 * scale {
        return Err(Error::InvalidCharacter(format!("s1 + s2 + s3 = {trace} is not zero")));
    }
    Ok(2.0 * (s1 * s1 + s1 * s2 + s2 * s2 - 2.0 * s1 - s2))
}

/// Casimir eigenvalue for `μ = s_α·α + s_β·β + s_{α+β}·(α+β)`, computed as
/// `⟨μ,μ⟩ − 2⟨μ,ρ⟩` with `⟨α,α⟩ = ⟨β,β⟩ = 2`, `⟨α,β⟩ = −1`.
pub fn eigenvalue_minparabolic_root(sa: Complex64, sb: Complex64, sab: Complex64) -> Complex64 {
    2.0 * (sa * sa + sb * sb + sab * sab - sa * sb + sa * sab + sb * sab - sa - sb - 2.0 * sab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rel_err;

    #[test]
    fn hilbert_eigenvalue_example() {
        let m = SpectralModel::hilbert(GrossencharParams::new(vec![1.0, -1.0]).unwrap());
        let v = m.eigenvalue(c64(0.5, 0.0)).unwrap();
        assert!((v - c64(-1.25, 0.0)).norm() < 1e-15);
        assert_eq!(m.c, 1.0);
    }

    #[test]
    fn simple_eigenvalues() {
        assert_eq!(SpectralModel::gl2q().eigenvalue(c64(0.0, 0.0)).unwrap(), c64(0.0, 0.0));
        let g = SpectralModel::gl3_cuspidal(c64(0.0, 0.0)).unwrap();
        assert!((g.eigenvalue(c64(0.5, 0.0)).unwrap() - c64(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn minparabolic_examples() {
        let z = c64(0.0, 0.0);
        assert_eq!(eigenvalue_minparabolic_power(z, z, z).unwrap(), z);
        assert_eq!(eigenvalue_minparabolic_power(c64(2.0, 0.0), z, c64(-2.0, 0.0)).unwrap(), z);
        assert_eq!(eigenvalue_minparabolic_root(z, z, z), z);
        assert_eq!(eigenvalue_minparabolic_root(c64(1.0, 0.0), c64(1.0, 0.0), z), c64(-2.0, 0.0));
        assert!(matches!(eigenvalue_minparabolic_power(c64(1.0, 0.0), z, z), Err(Error::InvalidCharacter(_))));
        // (0,0,1) and (1,1,0) describe the same μ = α + β
        assert_eq!(
            eigenvalue_minparabolic_root(z, z, c64(1.0, 0.0)),
            eigenvalue_minparabolic_root(c64(1.0, 0.0), c64(1.0, 0.0), z)
        );
    }

    #[test]
    fn pole_examples() {
        let p = SpectralModel::gl2q().poles(c64(0.75, 0.0)).unwrap();
        assert_eq!(p.s_plus, c64(0.75, 0.0));

        let h = SpectralModel::hilbert_with_norm(1.0).unwrap();
        let w = c64(1.0, 2.0);
        let p = h.poles(w).unwrap();
        assert!((p.s_plus - (0.5 + c64(-2.75, 2.0).sqrt())).norm() < 1e-15);
        assert!(rel_err(h.eigenvalue(p.s_plus).unwrap(), h.lambda_w(w)) < 1e-10);
        assert!((p.s_plus + p.s_minus - 1.0).norm() < 1e-15);

        let g = SpectralModel::gl3_cuspidal(c64(0.0, 0.0)).unwrap();
        let p = g.poles(c64(1.0, 0.0)).unwrap();
        assert!((p.s_plus.re - (0.5 + (1.0f64 / 3.0).sqrt())).abs() < 1e-15);
        assert_eq!(g.lambda_w(c64(1.0, 0.0)), c64(0.0, 0.0));
        assert!(g.eigenvalue(p.s_plus).unwrap().norm() < 1e-14);
    }

    #[test]
    fn pole_on_cut_is_ambiguous() {
        let h = SpectralModel::hilbert_with_norm(1.0).unwrap();
        assert!(matches!(h.poles(c64(0.5, 2.0)), Err(Error::BranchAmbiguity(_))));
    }

    #[test]
    fn branch_point_examples() {
        assert_eq!(SpectralModel::gl2q().branch_points().unwrap(), (c64(0.5, 0.0), c64(0.5, -0.0)));
        let g = SpectralModel::gl3_cuspidal(c64(0.0, 0.0)).unwrap();
        let (bp, _) = g.branch_points().unwrap();
        assert!((bp.im - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        let log_phi = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let h = SpectralModel::hilbert(grossenchar_from_unit(log_phi, 1).unwrap());
        let (bp, bm) = h.branch_points().unwrap();
        assert!((bp.im - 6.5286).abs() < 1e-4 && bm.im == -bp.im);
    }

    #[test]
    fn grossenchar_examples() {
        let g0 = grossenchar_from_unit(0.5, 0).unwrap();
        assert!(g0.is_trivial());
        let g1 = grossenchar_from_unit(0.5, 1).unwrap();
        let g2 = grossenchar_from_unit(0.5, 2).unwrap();
        assert_eq!(g2.t()[0], 2.0 * g1.t()[0]);
        assert_eq!(g1.t().iter().sum::<f64>(), 0.0);
        assert!(grossenchar_from_unit(0.0, 1).is_err());
        assert!(GrossencharParams::new(vec![1.0, 0.5]).is_err());
    }

    #[test]
    fn exceptional_tf() {
        let g = SpectralModel::gl3_cuspidal(c64(0.0, -0.5)).unwrap();
        assert!(g.c.abs() < 1e-16);
        let g = SpectralModel::gl3_cuspidal(c64(0.0, -0.25)).unwrap();
        assert!((g.c - (0.25 - 0.0625) / 3.0).abs() < 1e-16);
        assert!(SpectralModel::gl3_cuspidal(c64(0.0, 0.3)).is_err());
        assert!(SpectralModel::gl3_cuspidal(c64(1.0, 0.3)).is_err());
        let g = SpectralModel::gl3_cuspidal(c64(2.0, 0.0)).unwrap();
        assert!(g.c >= 1.0 / 12.0);
    }
}
