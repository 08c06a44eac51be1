use crate::eisenstein::{completed_product_numerator, UpperHalfPoint};
use crate::{Complex64, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum NumeratorKind {
    /// `exp((s − ½)²/σ²)`, i.e. `exp(−τ²/σ²)` on the critical line.
    SyntheticGaussian {
        width: f64,
    },
    /// `E*(1−s, z₀)·E*(s, z)` with completed Eisenstein series.
    EisensteinProductGL2 {
        z0: UpperHalfPoint,
        z: UpperHalfPoint,
        #[serde(default = "default_terms")]
        terms: usize,
    },
    Constant {
        value: Complex64,
    },
}

fn default_terms() -> usize {
    30
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// A numerator `N(s)` with `N(s) = N(1 − s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Numerator {
    #[serde(flatten)]
    pub kind: NumeratorKind,
    #[serde(default = "one")]
    pub scale: Complex64,
}

impl Numerator {
    pub fn gaussian(width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidArgument(format!("Gaussian width must be positive, got {width}")));
        }
        Ok(Self { kind: NumeratorKind::SyntheticGaussian { width }, scale: one() })
    }

    pub fn constant(value: Complex64) -> Self {
        Self { kind: NumeratorKind::Constant { value }, scale: one() }
    }

    pub fn eisenstein_product(z0: UpperHalfPoint, z: UpperHalfPoint, terms: usize) -> Self {
        Self { kind: NumeratorKind::EisensteinProductGL2 { z0, z, terms }, scale: one() }
    }

    pub fn with_scale(mut self, scale: Complex64) -> Self {
        self.scale = scale;
        self
    }

    pub fn parse(json: &str) -> Result<Self> {
        let n: Self = serde_json::from_str(json).map_err(|e| Error::InvalidArgument(format!("numerator: {e}")))?;
        if let NumeratorKind::SyntheticGaussian { width } = n.kind {
            Self::gaussian(width)?;
        }
        Ok(n)
    }

    /// `Some(value)` for a constant numerator.
    pub fn constant_value(&self) -> Option<Complex64> {
        match self.kind {
            NumeratorKind::Constant { value } => Some(self.scale * value),
            _ => None,
        }
    }

    pub fn value(&self, s: Complex64) -> Result<Complex64> {
        let v = match &self.kind {
            NumeratorKind::SyntheticGaussian { width } => {
                let u = s - 0.5;
                (u * u / (width * width)).exp()
            }
            NumeratorKind::EisensteinProductGL2 { z0, z, terms } => completed_product_numerator(*z0, *z, s, *terms)?,
            NumeratorKind::Constant { value } => *value,
        };
        Ok(self.scale * v)
    }

    /// `N'(s)`: closed form where available, otherwise a Cauchy integral on a
    /// circle that stays clear of the poles at `s = 0, 1`.
    pub fn derivative(&self, s: Complex64) -> Result<Complex64> {
        match &self.kind {
            NumeratorKind::SyntheticGaussian { width } => {
                let w2 = width * width;
                Ok(self.value(s)? * 2.0 * (s - 0.5) / w2)
            }
            NumeratorKind::Constant { .. } => Ok(Complex64::default()),
            NumeratorKind::EisensteinProductGL2 { .. } => {
                let clearance = s.norm().min((s - 1.0).norm());
                let rho = (0.5 * clearance).min(0.1);
                if rho < 1e-6 {
                    return Err(Error::Pole { function: "numerator", at: s });
                }
                const M: usize = 32;
                let mut acc = Complex64::default();
                for k in 0..M {
                    let e = Complex64::from_polar(rho, 2.0 * PI * k as f64 / M as f64);
                    acc += self.value(s + e)? / e;
                }
                Ok(acc / M as f64)
            }
        }
    }

    /// Whether `∫ |N| |ds| / |s|²` converges on the line without truncation.
    pub fn decays(&self) -> bool {
        !matches!(self.kind, NumeratorKind::Constant { .. })
    }

    /// Largest `|N(½+iτ) − N(½−iτ)|` over `n` equispaced `τ ∈ [0, T]`,
    /// together with the largest `|N|` seen.
    pub fn symmetry_defect(&self, t_max: f64, n: usize) -> Result<(f64, f64)> {
        let (mut dev, mut big) = (0.0f64, 0.0f64);
        for k in 0..=n {
            let tau = t_max * k as f64 / n as f64;
            let a = self.value(Complex64::new(0.5, tau))?;
            let b = self.value(Complex64::new(0.5, -tau))?;
            dev = dev.max((a - b).norm());
            big = big.max(a.norm()).max(b.norm());
        }
        Ok((dev, big))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c64, rel_err};

    #[test]
    fn gaussian_symmetry_and_derivative() {
        let n = Numerator::gaussian(1.3).unwrap().with_scale(c64(2.0, -1.0));
        let s = c64(0.2, 1.7);
        assert!(rel_err(n.value(s).unwrap(), n.value(1.0 - s).unwrap()) < 1e-14);
        let h = 1e-5;
        let fd = (n.value(s + h).unwrap() - n.value(s - h).unwrap()) / (2.0 * h);
        assert!(rel_err(n.derivative(s).unwrap(), fd) < 1e-8);
    }

    #[test]
    fn eisenstein_numerator_symmetric_and_derivative() {
        let n = Numerator::eisenstein_product(UpperHalfPoint::i(), UpperHalfPoint::i(), 30);
        let (dev, big) = n.symmetry_defect(8.0, 16).unwrap();
        assert!(dev <= 1e-10 * big);
        let s = c64(0.3, 1.1);
        let h = 1e-4;
        let fd = (n.value(s + h).unwrap() - n.value(s - h).unwrap()) / (2.0 * h);
        assert!(rel_err(n.derivative(s).unwrap(), fd) < 1e-6);
    }

    #[test]
    fn json_forms() {
        let n = Numerator::parse(r#"{"kind":"SyntheticGaussian","width":2.0}"#).unwrap();
        assert_eq!(n, Numerator::gaussian(2.0).unwrap());
        let n = Numerator::parse(r#"{"kind":"Constant","value":[1.0,0.0],"scale":[3.0,0.0]}"#).unwrap();
        assert_eq!(n.constant_value(), Some(c64(3.0, 0.0)));
        let n = Numerator::parse(r#"{"kind":"EisensteinProductGL2","z0":{"x":0,"y":1},"z":{"x":0,"y":1}}"#).unwrap();
        assert!(n.decays());
        assert!(Numerator::parse(r#"{"kind":"SyntheticGaussian","width":-1}"#).is_err());
    }
}
