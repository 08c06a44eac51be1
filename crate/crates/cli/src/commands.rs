//! One function per subcommand. Each writes its human-readable report to
//! `out` and its files under `--out`.

use crate::config::RunConfig;
use crate::output::{complex_json, csv, svg_polylines, to_json_string, write_atomic};
use crate::CliError;
use branching_core::continuation::{
    continue_integral, continue_pole, path_difference, pole_trajectory, ContinuationOptions,
};
use branching_core::paths::{crosses_origin, radicand_curve, WPath};
use branching_core::spectral::ModelDescriptor;
use branching_core::verify::{run_all, run_suite, suite_names, VerifyOptions, DEFAULT_SEED};
use branching_core::{Complex64, Error};
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;

fn options(cfg: &RunConfig) -> ContinuationOptions {
    let d = ContinuationOptions::default();
    ContinuationOptions { t_max: cfg.t_max.unwrap_or(d.t_max), tol: cfg.tol.unwrap_or(d.tol), ..d }
}

fn one_path(cfg: &RunConfig) -> Result<WPath, CliError> {
    let mut paths = cfg.paths()?;
    match paths.len() {
        1 => Ok(paths.remove(0)),
        n => Err(CliError::Validation(format!("expected exactly one --path, got {n}"))),
    }
}

/// JSON to `--out/name` when an output directory is set, else to `out`.
fn emit_json(cfg: &RunConfig, name: &str, v: &Value, out: &mut dyn Write) -> Result<(), CliError> {
    let text = to_json_string(v);
    match &cfg.out {
        Some(dir) => {
            let p = dir.join(name);
            write_atomic(&p, &text)?;
            writeln!(out, "wrote {}", p.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let p = dir.join(name);
    write_atomic(&p, text)?;
    writeln!(out, "wrote {}", p.display())?;
    Ok(())
}

pub fn branch_points(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let model = cfg.model()?;
    let (upper, _) = model.branch_points()?;
    writeln!(out, "{} ± {}i", upper.re, upper.im)?;
    if let Some(dir) = &cfg.out {
        let v = json!({
            "model": ModelDescriptor::from_model(&model),
            "c": model.c,
            "branch_points": [complex_json(upper), complex_json(upper.conj())],
        });
        write_file(dir, "branch_points.json", &to_json_string(&v), out)?;
    }
    Ok(())
}

pub fn trace(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let model = cfg.model()?;
    let path = one_path(cfg)?;
    let trace = continue_pole(&model, &path, &options(cfg))?;
    let s = pole_trajectory(&trace);
    let v = json!({
        "path": path.points().iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
        "crossings": trace.cut_crossings,
        "final_sign": i32::from(trace.final_sign),
        "s_end": complex_json(*s.last().expect("trace is never empty")),
        "max_square_residual": trace.max_square_residual(),
        "trace": serde_json::to_value(&trace).expect("plain data serializes"),
    });
    let rows = trace
        .w_samples
        .samples
        .iter()
        .zip(&trace.radicand_samples.samples)
        .zip(&s)
        .map(|((w, r), s)| vec![w.re, w.im, r.re, r.im, s.re, s.im]);
    let table = csv(&["k", "w_re", "w_im", "radicand_re", "radicand_im", "s_re", "s_im"], rows);
    match &cfg.out {
        Some(dir) => {
            write_file(dir, "trace.json", &to_json_string(&v), out)?;
            write_file(dir, "trace.csv", &table, out)?;
            writeln!(
                out,
                "crossings {}  final branch {}  s_end {}",
                trace.cut_crossings,
                i32::from(trace.final_sign),
                fmt_c(*s.last().unwrap())
            )?;
        }
        None => out.write_all(to_json_string(&v).as_bytes())?,
    }
    Ok(())
}

pub fn continue_cmd(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let model = cfg.model()?;
    let numerator = cfg.numerator()?;
    let path = one_path(cfg)?;
    let r = continue_integral(&numerator, &model, &path, &options(cfg))?;
    emit_json(cfg, "continue.json", &r.to_json_value(), out)
}

pub fn diff(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let model = cfg.model()?;
    let numerator = cfg.numerator()?;
    if cfg.w_end.is_none() {
        return Err(CliError::Validation("diff needs --w-end".into()));
    }
    let paths = cfg.paths()?;
    let [p1, p2] = paths.as_slice() else {
        return Err(CliError::Validation(format!("diff needs exactly two --path values, got {}", paths.len())));
    };
    let (numeric, expected) = path_difference(&numerator, &model, p1, p2, &options(cfg))?;
    let closed = expected.map(|t| t.term_value).unwrap_or_default();
    let rel = if closed.norm() > 0.0 { (numeric - closed).norm() / closed.norm() } else { numeric.norm() };
    let v = json!({
        "w_end": complex_json(p1.end()),
        "numeric": complex_json(numeric),
        "closed_form": complex_json(closed),
        "rel_agreement": rel,
        "correction": expected,
    });
    emit_json(cfg, "diff.json", &v, out)
}

/// Returns `false` when any selected suite fails.
pub fn verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let opts = VerifyOptions { seed: cfg.seed.unwrap_or(DEFAULT_SEED) };
    let selector = cfg.suite.as_deref().unwrap_or("all");
    let reports = if selector == "all" {
        run_all(&opts)
    } else {
        vec![run_suite(selector, &opts).map_err(|e| match e {
            Error::InvalidArgument(m) => CliError::Usage(m),
            other => other.into(),
        })?]
    };
    for r in &reports {
        out.write_all(r.render_table().as_bytes())?;
        writeln!(out)?;
    }
    for r in &reports {
        writeln!(out, "{}", r.summary_line())?;
    }
    if let Some(dir) = &cfg.out {
        let v = serde_json::to_value(&reports).expect("plain data serializes");
        write_file(dir, "verify.json", &to_json_string(&v), out)?;
    }
    Ok(reports.iter().all(|r| r.passed))
}

pub fn curve(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let t_norm = cfg.t_norm.unwrap_or(1.0);
    let alphas = if cfg.alphas.is_empty() { vec![0.5, 1.0, 2.0] } else { cfg.alphas.clone() };
    let sigma = cfg.sigma_range()?;
    let step = cfg.step.unwrap_or(0.01);
    let dir = cfg.out.clone().unwrap_or_else(|| ".".into());
    let mut drawn = Vec::new();
    for &alpha in &alphas {
        let c = radicand_curve(t_norm, alpha, sigma, step)?;
        let zs = &c.samples.samples;
        let min_x = zs.iter().copied().fold(Complex64::new(f64::INFINITY, 0.0), |m, z| if z.re < m.re { z } else { m });
        let crosses = match crosses_origin(t_norm, alpha) {
            Ok(b) => json!(b),
            Err(Error::BoundaryCrossing(_)) => json!("boundary"),
            Err(e) => return Err(e.into()),
        };
        let tag = format!("alpha_{alpha}");
        let rows = c.sigma.iter().zip(zs).map(|(s, z)| vec![*s, z.re, z.im]);
        write_file(&dir, &format!("curve_{tag}.csv"), &csv(&["k", "sigma", "re", "im"], rows), out)?;
        let title = format!("radicand curve, |t| = {t_norm}, alpha = {alpha}");
        write_file(&dir, &format!("curve_{tag}.svg"), &svg_polylines(&title, &[(&tag, zs)]), out)?;
        let v = json!({
            "t_norm": t_norm,
            "alpha": alpha,
            "parabola": c.parabola,
            "vertex": complex_json(Complex64::new(c.parabola.c0, 0.0)),
            "min_x_point": complex_json(min_x),
            "crosses_origin": crosses,
            "samples": zs.len(),
        });
        write_file(&dir, &format!("curve_{tag}.json"), &to_json_string(&v), out)?;
        writeln!(
            out,
            "alpha {alpha}: x = {} y^2 {} {}, vertex ({}, 0), crosses origin {}",
            c.parabola.a2,
            if c.parabola.c0 < 0.0 { '-' } else { '+' },
            c.parabola.c0.abs(),
            c.parabola.c0,
            crosses
        )?;
        drawn.push((tag, c.samples.samples));
    }
    if drawn.len() > 1 {
        let series: Vec<(&str, &[Complex64])> = drawn.iter().map(|(t, z)| (t.as_str(), z.as_slice())).collect();
        write_file(&dir, "curves.svg", &svg_polylines(&format!("radicand curves, |t| = {t_norm}"), &series), out)?;
    }
    Ok(())
}

pub fn known_suites() -> String {
    let mut v: Vec<_> = suite_names().collect();
    v.push("all");
    v.join(", ")
}

fn fmt_c(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{} - {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}
