//! Run configuration: a flat `key = value` file overlaid by command-line flags.

use crate::CliError;
use branching_core::continuation::Numerator;
use branching_core::paths::{parse_complex, WPath};
use branching_core::spectral::{ModelDescriptor, SpectralModel};
use branching_core::Complex64;
use serde_json::Value;
use std::path::{Path, PathBuf};

/// Everything a subcommand may need. Unset fields fall back to per-command defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    /// Model descriptor JSON (read from a file or given inline).
    pub model: Option<String>,
    pub numerator: Option<String>,
    pub paths: Vec<String>,
    pub w_end: Option<String>,
    pub t_max: Option<f64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub suite: Option<String>,
    pub t_norm: Option<f64>,
    pub alphas: Vec<f64>,
    pub sigma: Option<String>,
    pub step: Option<f64>,
    pub seed: Option<u64>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// A `JSON` value that is either an inline object or the path of a file holding one.
fn json_or_file(v: &str, base: Option<&Path>) -> Result<String, CliError> {
    let t = v.trim();
    if t.starts_with('{') {
        return Ok(t.to_string());
    }
    let p = match base {
        Some(b) if Path::new(t).is_relative() => b.join(t),
        _ => PathBuf::from(t),
    };
    std::fs::read_to_string(&p).map_err(|e| bad(format!("cannot read {}: {e}", p.display())))
}

fn number(key: &str, v: &str) -> Result<f64, CliError> {
    v.trim().parse::<f64>().map_err(|_| bad(format!("{key}: expected a number, got {v:?}")))
}

/// Either a JSON array of strings/numbers or a single bare value.
fn list(v: &str) -> Vec<String> {
    match serde_json::from_str::<Value>(v.trim()) {
        Ok(Value::Array(items)) => items
            .into_iter()
            .map(|x| match x {
                Value::String(s) => s,
                other => other.to_string(),
            })
            .collect(),
        Ok(Value::String(s)) => vec![s],
        _ => vec![v.trim().to_string()],
    }
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment, keys are
    /// case-insensitive and `-` and `_` are interchangeable.
    pub fn parse_file_contents(text: &str, base: Option<&Path>) -> Result<Self, CliError> {
        let mut c = Self::default();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(bad(format!("config line {}: expected key = value", k + 1)));
            };
            let key = key.trim().to_ascii_lowercase().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "model" => c.model = Some(json_or_file(value, base)?),
                "numerator" => c.numerator = Some(json_or_file(value, base)?),
                "path" | "paths" => c.paths.extend(list(value)),
                "w_end" => c.w_end = Some(value.to_string()),
                "t" | "t_max" => c.t_max = Some(number(&key, value)?),
                "tol" => c.tol = Some(number(&key, value)?),
                "out" => c.out = Some(PathBuf::from(value)),
                "suite" => c.suite = Some(value.to_string()),
                "t_norm" => c.t_norm = Some(number(&key, value)?),
                "alpha" | "alphas" => {
                    for a in list(value) {
                        c.alphas.push(number("alpha", &a)?);
                    }
                }
                "sigma" => c.sigma = Some(value.to_string()),
                "step" => c.step = Some(number(&key, value)?),
                "seed" => {
                    c.seed = Some(value.parse().map_err(|_| bad(format!("seed: expected an integer, got {value:?}")))?)
                }
                other => return Err(bad(format!("config line {}: unknown key {other:?}", k + 1))),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_file_contents(&text, path.parent())
    }

    /// Fields set in `flags` win; list fields are replaced when given.
    pub fn overlay(mut self, flags: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => {$( if flags.$f.is_some() { self.$f = flags.$f; } )*};
        }
        take!(model, numerator, w_end, t_max, tol, out, suite, t_norm, sigma, step, seed);
        if !flags.paths.is_empty() {
            self.paths = flags.paths;
        }
        if !flags.alphas.is_empty() {
            self.alphas = flags.alphas;
        }
        self
    }

    /// Checks that every numeric setting present is positive and finite.
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [("T", self.t_max), ("tol", self.tol), ("t_norm", self.t_norm), ("step", self.step)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(bad(format!("{name} must be positive, got {v}")));
                }
            }
        }
        Ok(())
    }

    pub fn model(&self) -> Result<SpectralModel, CliError> {
        let json = self.model.as_deref().ok_or_else(|| bad("--model is required"))?;
        Ok(ModelDescriptor::parse(json)?)
    }

    pub fn numerator(&self) -> Result<Numerator, CliError> {
        let json = self.numerator.as_deref().ok_or_else(|| bad("--numerator is required"))?;
        Ok(Numerator::parse(json)?)
    }

    pub fn w_end(&self) -> Result<Option<Complex64>, CliError> {
        self.w_end.as_deref().map(|s| parse_complex(s).map_err(CliError::from)).transpose()
    }

    /// Paths with `w_end` appended as a last vertex when they stop short of it.
    pub fn paths(&self) -> Result<Vec<WPath>, CliError> {
        let w_end = self.w_end()?;
        self.paths
            .iter()
            .enumerate()
            .map(|(k, spec)| {
                let p = WPath::parse(spec, format!("path{}", k + 1))?;
                match w_end {
                    Some(w) if p.end() != w => {
                        let mut pts = p.points().to_vec();
                        pts.push(w);
                        Ok(WPath::new(pts, p.label())?)
                    }
                    _ => Ok(p),
                }
            })
            .collect()
    }

    pub fn sigma_range(&self) -> Result<(f64, f64), CliError> {
        let Some(s) = &self.sigma else { return Ok((1.0, -1.0)) };
        let (a, b) = s.split_once(',').ok_or_else(|| bad(format!("sigma: expected \"from,to\", got {s:?}")))?;
        Ok((number("sigma", a)?, number("sigma", b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let text =
            "# run\nmodel = {\"kind\":\"GL2Q\"}\npath = [\"1.2,0.5;0.2,0.5\"]\nT = 40\ntol=1e-9\nalpha = [0.5, 2]\n";
        let c = RunConfig::parse_file_contents(text, None).unwrap();
        assert_eq!(c.t_max, Some(40.0));
        assert_eq!(c.alphas, vec![0.5, 2.0]);
        assert_eq!(c.paths.len(), 1);
        let flags = RunConfig { t_max: Some(10.0), ..Default::default() };
        let c = c.overlay(flags);
        assert_eq!(c.t_max, Some(10.0));
        assert_eq!(c.tol, Some(1e-9));
        assert_eq!(c.model().unwrap(), SpectralModel::gl2q());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_numbers() {
        assert!(RunConfig::parse_file_contents("colour = red", None).is_err());
        assert!(RunConfig::parse_file_contents("T = lots", None).is_err());
        let c = RunConfig { tol: Some(-1.0), ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn w_end_is_appended() {
        let c = RunConfig { paths: vec!["1.2,2;0.25,2".into()], w_end: Some("0.25,2.5".into()), ..Default::default() };
        let p = &c.paths().unwrap()[0];
        assert_eq!(p.points().len(), 3);
        assert_eq!(p.end(), Complex64::new(0.25, 2.5));
    }
}
