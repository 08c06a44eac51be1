use super::{GrossencharParams, ModelKind, SpectralModel};
use crate::{c64, Complex64, Error, Result};
use serde::{Deserialize, Serialize};

/// `t_f` as written in a descriptor: a bare number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TfValue {
    Real(f64),
    Complex([f64; 2]),
}

impl From<TfValue> for Complex64 {
    fn from(v: TfValue) -> Self {
        match v {
            TfValue::Real(x) => c64(x, 0.0),
            TfValue::Complex([re, im]) => c64(re, im),
        }
    }
}

/// JSON form of a [`SpectralModel`]: `{kind, t, t_f, a, c, nu}`.
///
/// `a`, `c` and `nu` are derived from the kind; when present in the input they
/// must agree with the derived values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_f: Option<TfValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_norm_sq: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<u32>,
}

fn normalize(kind: &str) -> String {
    kind.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase()
}

impl ModelDescriptor {
    pub fn to_model(&self) -> Result<SpectralModel> {
        let model = match normalize(&self.kind).as_str() {
            "gl2q" | "gl2" => SpectralModel::gl2q(),
            "hilbertmaass" | "hilbert" => {
                let t = self.t.clone().ok_or_else(|| Error::InvalidModel("HilbertMaass needs t".into()))?;
                SpectralModel::hilbert(GrossencharParams::new(t)?)
            }
            "gl3cuspidal" => {
                let tf = self.t_f.ok_or_else(|| Error::InvalidModel("GL3Cuspidal needs t_f".into()))?;
                SpectralModel::gl3_cuspidal(tf.into())?
            }
            "gl3minparabolic" => SpectralModel::gl3_min_parabolic(self.rho_norm_sq.unwrap_or(2.0))?,
            other => return Err(Error::InvalidModel(format!("unknown model kind {other:?}"))),
        };
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * (1.0 + y.abs());
        if let Some(a) = self.a {
            if !close(a, model.a) {
                return Err(Error::InvalidModel(format!("a = {a} but the kind implies {}", model.a)));
            }
        }
        if let Some(c) = self.c {
            if !close(c, model.c) {
                return Err(Error::InvalidModel(format!("c = {c} but the kind implies {}", model.c)));
            }
        }
        if let Some(nu) = self.nu {
            if nu != model.nu {
                return Err(Error::InvalidModel(format!("nu = {nu} but the kind implies {}", model.nu)));
            }
        }
        Ok(model)
    }

    pub fn from_model(m: &SpectralModel) -> Self {
        let mut d = Self {
            kind: String::new(),
            t: None,
            t_f: None,
            rho_norm_sq: None,
            a: Some(m.a),
            c: Some(m.c),
            nu: Some(m.nu),
        };
        match &m.kind {
            ModelKind::Gl2Q => d.kind = "GL2Q".into(),
            ModelKind::HilbertMaass(p) => {
                d.kind = "HilbertMaass".into();
                d.t = Some(p.t().to_vec());
            }
            ModelKind::Gl3Cuspidal { t_f } => {
                d.kind = "GL3Cuspidal".into();
                d.t_f = Some(if t_f.im == 0.0 { TfValue::Real(t_f.re) } else { TfValue::Complex([t_f.re, t_f.im]) });
            }
            ModelKind::Gl3MinParabolic { rho_norm_sq } => {
                d.kind = "GL3MinParabolic".into();
                d.rho_norm_sq = Some(*rho_norm_sq);
            }
        }
        d
    }

    pub fn parse(json: &str) -> Result<SpectralModel> {
        let d: Self = serde_json::from_str(json).map_err(|e| Error::InvalidModel(e.to_string()))?;
        d.to_model()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for m in [
            SpectralModel::gl2q(),
            SpectralModel::hilbert_with_norm(1.5).unwrap(),
            SpectralModel::gl3_cuspidal(c64(2.0, 0.0)).unwrap(),
            SpectralModel::gl3_cuspidal(c64(0.0, -0.25)).unwrap(),
            SpectralModel::gl3_min_parabolic(2.0).unwrap(),
        ] {
            let json = serde_json::to_string(&ModelDescriptor::from_model(&m)).unwrap();
            assert_eq!(ModelDescriptor::parse(&json).unwrap(), m);
        }
    }

    #[test]
    fn parses_hand_written_forms() {
        let m = ModelDescriptor::parse(r#"{"kind":"GL3Cuspidal","t_f":[0,-0.5]}"#).unwrap();
        assert_eq!(m.nu, 2);
        let m = ModelDescriptor::parse(r#"{"kind":"HilbertMaass","t":[1,-1],"c":1}"#).unwrap();
        assert_eq!(m.c, 1.0);
    }

    #[test]
    fn rejects_inconsistent_descriptors() {
        assert!(ModelDescriptor::parse(r#"{"kind":"GL2Q","a":6}"#).is_err());
        assert!(ModelDescriptor::parse(r#"{"kind":"HilbertMaass"}"#).is_err());
        assert!(ModelDescriptor::parse(r#"{"kind":"GL4"}"#).is_err());
        assert!(ModelDescriptor::parse(r#"{"kind":"HilbertMaass","t":[1,1]}"#).is_err());
    }
}
