//! The property suites behind `branching verify` and the acceptance target.
//!
//! Every suite is deterministic: random inputs come from a seeded ChaCha
//! stream and parallel sweeps are collected in input order.

use crate::continuation::{
    continue_integral, path_difference, verify_no_branching_planar, ContinuationOptions, CorrectionMethod,
    CorrectionTerm, Numerator,
};
use crate::eisenstein::{eisenstein_gl2, EisensteinParams, UpperHalfPoint};
use crate::paths::{crosses_origin, radicand_curve, track_sqrt, BranchSign, TrackOptions, WPath};
use crate::quadrature::{
    default_disk_radius, direct_line_integral, planar_radial_oracle, planar_singular_integral, singular_line_integral,
    LineIntegrandSpec, Numerator2d, Numerator2dKind,
};
use crate::spectral::{eigenvalue_minparabolic_power, eigenvalue_minparabolic_root, SpectralModel};
use crate::{c64, rel_err, Complex64, Error, Result, I};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;

pub const DEFAULT_SEED: u64 = 0x5eed_b4a7;

/// Pinned tolerances, one per criterion.
pub mod tol {
    pub const SIMPLE_POLE: f64 = 1e-8;
    pub const DOUBLE_POLE: f64 = 1e-6;
    pub const PLANAR: f64 = 1e-6;
    pub const BRANCHING_HILBERT: f64 = 1e-6;
    pub const BRANCHING_GL3: f64 = 1e-6;
    pub const NO_BRANCHING_LINE: f64 = 1e-8;
    pub const NO_BRANCHING_PLANAR: f64 = 1e-6;
    pub const EIGENVALUES: f64 = 1e-12;
    pub const EISENSTEIN_MODES: f64 = 1e-6;
    pub const EISENSTEIN_INVARIANCE: f64 = 1e-8;
}

/// `(criterion number, suite name, title)`.
pub const SUITES: [(u8, &str, &str); 9] = [
    (1, "singular-integrals", "simple-pole singular integral vs quadrature"),
    (2, "double-pole", "double-pole singular integral vs quadrature"),
    (3, "planar", "planar singular integral vs radial quadrature"),
    (4, "branching-hilbert", "branching difference, Hilbert models"),
    (5, "branching-gl3", "branching difference, GL3 cuspidal data"),
    (6, "no-branching", "no branching: GL2 Eisenstein product and planar crossing"),
    (7, "winding", "winding criterion vs tracked square-root parity"),
    (8, "eigenvalues", "Casimir parametrizations and cuspidal reduction"),
    (9, "eisenstein", "Eisenstein series: modes and modular invariance"),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|s| s.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED }
    }
}

/// One row of a suite report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub value: Complex64,
    pub reference: Complex64,
    /// Relative error unless the label says otherwise.
    pub error: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Check {
    fn rel(label: impl Into<String>, value: Complex64, reference: Complex64, tol: f64) -> Self {
        let error = rel_err(value, reference);
        Self { label: label.into(), value, reference, error, tol, passed: error <= tol }
    }

    fn flag(label: impl Into<String>, ok: bool) -> Self {
        let v = c64(ok as u8 as f64, 0.0);
        Self {
            label: label.into(),
            value: v,
            reference: c64(1.0, 0.0),
            error: if ok { 0.0 } else { 1.0 },
            tol: 0.0,
            passed: ok,
        }
    }

    fn failed(label: impl Into<String>, e: &Error) -> Self {
        Self {
            label: format!("{}: {e}", label.into()),
            value: c64(f64::NAN, f64::NAN),
            reference: c64(f64::NAN, f64::NAN),
            error: f64::INFINITY,
            tol: 0.0,
            passed: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub criterion: u8,
    pub name: String,
    pub title: String,
    pub checks: Vec<Check>,
    /// Supplementary rows that do not decide the outcome.
    pub info: Vec<Check>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(criterion: u8, checks: Vec<Check>, info: Vec<Check>, notes: Vec<String>) -> Self {
        let (_, name, title) = SUITES[criterion as usize - 1];
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        Self { criterion, name: name.into(), title: title.into(), checks, info, notes, passed }
    }

    pub fn max_error(&self) -> f64 {
        self.checks.iter().map(|c| c.error).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    /// `criterion 4 [branching-hilbert] PASS  10/10 checks, max error 1.2e-9`.
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {} [{}] {}  {}/{} checks, max error {:.3e}",
            self.criterion,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len() - self.failures(),
            self.checks.len(),
            self.max_error()
        )
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== criterion {}: {} ({}) ==", self.criterion, self.title, self.name);
        let _ = writeln!(out, "{:<44} {:>24} {:>24} {:>10} {:>8}  ok", "check", "value", "reference", "error", "tol");
        let mut row = |c: &Check, tag: &str| {
            let _ = writeln!(
                out,
                "{:<44} {:>24} {:>24} {:>10.3e} {:>8.0e}  {}",
                c.label,
                fmt_c(c.value),
                fmt_c(c.reference),
                c.error,
                c.tol,
                if !tag.is_empty() {
                    tag
                } else if c.passed {
                    "yes"
                } else {
                    "NO"
                }
            );
        };
        for c in &self.checks {
            row(c, "");
        }
        for c in &self.info {
            row(c, "info");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "{}", self.summary_line());
        out
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.9e}{:+.3e}i", z.re, z.im)
}

fn rng(opts: &VerifyOptions, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(opts.seed);
    r.set_stream(stream);
    r
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    Ok(match name {
        "singular-integrals" => singular_integrals(opts),
        "double-pole" => double_pole(opts),
        "planar" => planar(opts),
        "branching-hilbert" => branching_hilbert(opts),
        "branching-gl3" => branching_gl3(opts),
        "no-branching" => no_branching(opts),
        "winding" => winding(opts),
        "eigenvalues" => eigenvalues(opts),
        "eisenstein" => eisenstein(opts),
        other => {
            let known: Vec<_> = suite_names().collect();
            return Err(Error::InvalidArgument(format!("unknown suite {other:?}; known: {}, all", known.join(", "))));
        }
    })
}

pub fn run_all(opts: &VerifyOptions) -> Vec<SuiteReport> {
    suite_names().map(|n| run_suite(n, opts).expect("known suite")).collect()
}

/// Poles for a `w` that may sit on either side of the critical line: the one
/// reached from `Re w > ½` without crossing.
fn right_pole(model: &SpectralModel, w: Complex64) -> Result<Complex64> {
    Ok(model.poles(w)?.s_plus)
}

/// `∫ ds/(λ − λ_w)^ν` by quadrature to `T = 10⁵` plus the analytic tail.
fn line_oracle(model: &SpectralModel, w: Complex64) -> Result<Complex64> {
    let spec = LineIntegrandSpec::new(Numerator::constant(c64(1.0, 0.0)), model.clone(), w, 1e5, 1e-12)?;
    Ok(direct_line_integral(&spec)?.value)
}

fn singular_integrals(opts: &VerifyOptions) -> SuiteReport {
    let mut r = rng(opts, 1);
    let items: Vec<(f64, Complex64)> = (0..30)
        .map(|k| {
            let t = [0.0, 1.0, 3.0][k % 3];
            (t, c64(r.gen_range(0.6..2.0), r.gen_range(-2.0..2.0)))
        })
        .collect();
    let checks = items
        .par_iter()
        .map(|&(t, w)| {
            let label = format!("|t|={t} w={:.3}{:+.3}i", w.re, w.im);
            let run = || -> Result<Check> {
                let m = SpectralModel::hilbert_with_norm(t)?;
                let s = right_pole(&m, w)?;
                let closed = singular_line_integral(&m, s)?;
                let direct = 2.0 * PI * I / (1.0 - 2.0 * s);
                debug_assert!(rel_err(closed, direct) < 1e-14);
                Ok(Check::rel(label.clone(), closed, line_oracle(&m, w)?, tol::SIMPLE_POLE))
            };
            run().unwrap_or_else(|e| Check::failed(&label, &e))
        })
        .collect();
    SuiteReport::new(
        1,
        checks,
        vec![],
        vec!["closed form 2πi/(1−2s*) against Gauss–Kronrod on |τ| ≤ 1e5 plus arctan tail".into()],
    )
}

fn double_pole(opts: &VerifyOptions) -> SuiteReport {
    let mut r = rng(opts, 2);
    let tfs = [c64(0.0, 0.0), c64(2.0, 0.0), c64(1.0, 0.0), c64(0.0, -0.3)];
    let items: Vec<(Complex64, Complex64)> =
        (0..20).map(|k| (tfs[k % tfs.len()], c64(r.gen_range(0.6..2.0), r.gen_range(-2.0..2.0)))).collect();
    let rows: Vec<(Check, Check)> = items
        .par_iter()
        .map(|&(tf, w)| {
            let label = format!("t_f={}{:+}i w={:.3}{:+.3}i", tf.re, tf.im, w.re, w.im);
            let run = || -> Result<(Check, Check)> {
                let m = SpectralModel::gl3_cuspidal(tf)?;
                let s = right_pole(&m, w)?;
                let closed = singular_line_integral(&m, s)?;
                let unscaled = 4.0 * PI * I / (2.0 * s - 1.0).powi(3);
                let ratio = closed / unscaled;
                Ok((
                    Check::rel(label.clone(), closed, line_oracle(&m, w)?, tol::DOUBLE_POLE),
                    Check::rel(format!("ratio to 4πi/(2s*−1)³, {label}"), ratio, c64(1.0 / 36.0, 0.0), 1e-14),
                ))
            };
            run().unwrap_or_else(|e| (Check::failed(&label, &e), Check::failed(&label, &e)))
        })
        .collect();
    let (checks, info): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let ratio_ok = info.iter().all(|c| c.passed);
    SuiteReport::new(
        2,
        checks,
        info,
        vec![format!(
            "closed form carries a² = 36; its ratio to the form without a² is 1/36 on every row: {}",
            if ratio_ok { "confirmed" } else { "NOT confirmed" }
        )],
    )
}

fn planar(opts: &VerifyOptions) -> SuiteReport {
    let mut r = rng(opts, 3);
    let ws: Vec<Complex64> = (0..20).map(|_| c64(r.gen_range(0.1..3.0), r.gen_range(-3.0..3.0))).collect();
    let checks = ws
        .iter()
        .map(|&w| {
            let label = format!("w={:.3}{:+.3}i", w.re, w.im);
            let run = || -> Result<Check> {
                Ok(Check::rel(
                    label.clone(),
                    planar_singular_integral(w)?,
                    planar_radial_oracle(w, 1e-12)?.value,
                    tol::PLANAR,
                ))
            };
            run().unwrap_or_else(|e| Check::failed(&label, &e))
        })
        .collect();
    SuiteReport::new(3, checks, vec![], vec!["π/w² against 2π∫₀^∞ r dr/(r²+w²)², mapped to [0, 1]".into()])
}

/// Straight to `(w_end.re, height)`, then vertically to `w_end`.
fn crossing_path(start_re: f64, height: f64, w_end: Complex64) -> Result<WPath> {
    let mut pts = vec![c64(start_re, height), c64(w_end.re, height)];
    if w_end.im != height {
        pts.push(w_end);
    }
    WPath::new(pts, format!("cross@{height}"))
}

struct Branching {
    numeric: Complex64,
    literal: Complex64,
    full: CorrectionTerm,
}

/// `I_{γ₁}(w_end) − I_{γ₂}(w_end)` for crossings at `h1` (outside the branch
/// points) and `h2` (between them).
fn branching_case(model: &SpectralModel, n: &Numerator, w_end: Complex64, h1: f64, h2: f64) -> Result<Branching> {
    let opts = ContinuationOptions::default();
    let (p1, p2) = (crossing_path(1.2, h1, w_end)?, crossing_path(1.2, h2, w_end)?);
    let (numeric, expected) = path_difference(n, model, &p1, &p2, &opts)?;
    let full = expected.ok_or_else(|| Error::InvalidPathPair("no crossing correction was produced".into()))?;
    let s = full.s_star;
    let a = model.a;
    let literal = match model.nu {
        1 => 4.0 * PI * I * full.numerator_value / (a * (1.0 - 2.0 * s)),
        _ => 8.0 * PI * I * full.numerator_value / (a * a * (1.0 - 2.0 * s).powi(3)),
    };
    Ok(Branching { numeric, literal, full })
}

fn branching_hilbert(opts: &VerifyOptions) -> SuiteReport {
    let mut r = rng(opts, 4);
    let items: Vec<(f64, f64, f64, f64)> = (0..10)
        .map(|_| (r.gen_range(0.5..4.0), r.gen_range(0.15..0.4), r.gen_range(1.3..2.5), r.gen_range(0.8..1.5)))
        .collect();
    let checks = items
        .par_iter()
        .map(|&(t, x, beta, u)| {
            let w_end = c64(x, beta * t);
            let label = format!("|t|={t:.3} w'={:.3}{:+.3}i", w_end.re, w_end.im);
            let run = || -> Result<Check> {
                let m = SpectralModel::hilbert_with_norm(t)?;
                let n = Numerator::gaussian(u * t)?;
                let b = branching_case(&m, &n, w_end, 2.0 * t, 0.3 * t)?;
                Ok(Check::rel(label.clone(), b.numeric, b.literal, tol::BRANCHING_HILBERT))
            };
            run().unwrap_or_else(|e| Check::failed(&label, &e))
        })
        .collect();
    SuiteReport::new(
        4,
        checks,
        vec![],
        vec!["numeric: both continuations with residue jumps measured by contour quadrature; reference 4πi·N(s*)/(1−2s*)".into()],
    )
}

fn branching_gl3(_opts: &VerifyOptions) -> SuiteReport {
    let mut checks = Vec::new();
    let mut info = Vec::new();
    let rows: Vec<_> = [0.0, 1.0, 2.0]
        .par_iter()
        .map(|&tf| {
            let m = SpectralModel::gl3_cuspidal(c64(tf, 0.0))?;
            let sc = m.c.sqrt();
            let w_end = c64(0.25, 2.5 * sc);
            let n = Numerator::gaussian(1.0)?;
            let b = branching_case(&m, &n, w_end, 2.0 * sc, 0.3 * sc)?;
            Ok::<_, Error>((tf, w_end, b))
        })
        .collect();
    for (k, row) in rows.into_iter().enumerate() {
        match row {
            Ok((tf, w_end, b)) => {
                let label = format!("t_f={tf} w'={:.3}{:+.3}i", w_end.re, w_end.im);
                checks.push(Check::rel(format!("8πi-form, {label}"), b.numeric, b.literal, tol::BRANCHING_GL3));
                info.push(Check::rel(
                    format!("with N' term, {label}"),
                    b.numeric,
                    b.full.term_value,
                    tol::BRANCHING_GL3,
                ));
                let unscaled = 8.0 * PI * I * b.full.numerator_value / (1.0 - 2.0 * b.full.s_star).powi(3);
                info.push(Check::rel(
                    format!("a²-form / a=1 form, {label}"),
                    b.literal / unscaled,
                    c64(1.0 / 36.0, 0.0),
                    1e-14,
                ));
            }
            Err(e) => checks.push(Check::failed(format!("t_f={}", [0, 1, 2][k]), &e)),
        }
    }
    let full_ok = info.iter().step_by(2).all(|c| c.passed);
    SuiteReport::new(
        5,
        checks,
        info,
        vec![
            "reference 8πi·N(s*)/(a²(1−2s*)³) with a = 6 decides the outcome".into(),
            format!(
                "for a double pole the jump is 8πi·N(s*)/(a²(2s*−1)³) − 4πi·N'(s*)/(a²(2s*−1)²); \
                 that form matches the numeric difference on every row: {}",
                if full_ok { "yes" } else { "no" }
            ),
        ],
    )
}

fn no_branching(_opts: &VerifyOptions) -> SuiteReport {
    let mut checks = Vec::new();
    let mut info = Vec::new();
    let m = SpectralModel::gl2q();
    let n = Numerator::eisenstein_product(UpperHalfPoint::i(), UpperHalfPoint::i(), 30);
    let w_end = c64(0.2, 0.6);
    let o = ContinuationOptions { method: CorrectionMethod::Numeric, ..ContinuationOptions::default() };
    let heights = [0.6, 1.7, -0.9];
    let runs: Vec<_> = heights
        .par_iter()
        .map(|&h| crossing_path(1.2, h, w_end).and_then(|p| continue_integral(&n, &m, &p, &o)))
        .collect();
    let mut values = Vec::new();
    for (h, run) in heights.iter().zip(runs) {
        let label = format!("GL2Q E(i)E(i), crossing at {h}");
        match run.and_then(|r| {
            let nw = n.value(w_end)?;
            Ok((r, 4.0 * PI * I * nw / (1.0 - 2.0 * w_end)))
        }) {
            Ok((r, expected)) => {
                checks.push(Check::flag(format!("{label}: one correction"), r.corrections.len() == 1));
                let term = r.corrections.first().map(|c| c.term_value).unwrap_or_default();
                checks.push(Check::rel(format!("{label}: term"), term, expected, tol::NO_BRANCHING_LINE));
                values.push(r.endpoint_value);
            }
            Err(e) => checks.push(Check::failed(label, &e)),
        }
    }
    for k in 1..values.len() {
        checks.push(Check::rel(
            format!("endpoint, height {} vs {}", heights[k], heights[0]),
            values[k],
            values[0],
            tol::NO_BRANCHING_LINE,
        ));
    }
    let cases = [
        (Numerator2d::gaussian(1.0), c64(1.0, 0.5), true),
        (Numerator2d::gaussian(1.0), c64(1.0, 0.5), false),
        (Numerator2d::new(Numerator2dKind::GaussianNormSq { width: 1.0 }), c64(0.7, -0.4), true),
        (Numerator2d::gaussian(2.0), c64(1.5, 1.0), false),
    ];
    let planar_rows: Vec<_> = cases
        .par_iter()
        .map(|&(ref nn, w, conj)| {
            let wl = if conj { -w.conj() } else { -w };
            (nn.kind, w, wl, verify_no_branching_planar(nn, wl, w, default_disk_radius(w), 1e-9))
        })
        .collect();
    for (kind, w, wl, rep) in planar_rows {
        let label = format!("planar {kind:?} {:.2}{:+.2}i→{:.2}{:+.2}i", w.re, w.im, wl.re, wl.im);
        match rep {
            Ok(rep) => {
                checks.push(Check::rel(label.clone(), rep.continued, rep.direct, tol::NO_BRANCHING_PLANAR));
                info.push(Check {
                    label: format!("extra term (abs), {label}"),
                    value: rep.extra_term,
                    reference: Complex64::default(),
                    error: rep.extra_term.norm(),
                    tol: tol::NO_BRANCHING_PLANAR,
                    passed: rep.extra_term.norm() <= tol::NO_BRANCHING_PLANAR,
                });
            }
            Err(e) => checks.push(Check::failed(label, &e)),
        }
    }
    SuiteReport::new(
        6,
        checks,
        info,
        vec!["line part: crossing at any nonzero height moves the GL2 pole s* = w across, with the same term".into()],
    )
}

fn winding(opts: &VerifyOptions) -> SuiteReport {
    let mut r = rng(opts, 7);
    let mut items = Vec::new();
    while items.len() < 100 {
        let t: f64 = r.gen_range(0.3..4.0);
        let a: f64 = r.gen_range(0.2..3.0);
        if a > 0.98 && a < 1.02 {
            continue;
        }
        let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        items.push((t, sign * a));
    }
    let rows: Vec<(f64, f64, Result<(bool, i32)>)> = items
        .par_iter()
        .map(|&(t, a)| {
            let run = || -> Result<(bool, i32)> {
                let predicted = crosses_origin(t, a)?;
                let step = 0.01 * (1.0 + t * t);
                let c = radicand_curve(t, a, (3.0, -3.0), step)?;
                let tr = track_sqrt(&c.samples, BranchSign::Plus, &TrackOptions::default())?;
                Ok((predicted, tr.cut_crossings))
            };
            (t, a, run())
        })
        .collect();
    let mut disagreements = 0;
    let mut notes = Vec::new();
    for (t, a, row) in &rows {
        match row {
            Ok((p, c)) if *p == (c.rem_euclid(2) == 1) => {}
            Ok((p, c)) => {
                disagreements += 1;
                notes.push(format!("|t|={t:.3} α={a:.3}: crosses_origin={p}, crossings={c}"));
            }
            Err(e) => {
                disagreements += 1;
                notes.push(format!("|t|={t:.3} α={a:.3}: {e}"));
            }
        }
    }
    let crossing = rows.iter().filter(|r| matches!(r.2, Ok((true, _)))).count();
    let checks = vec![Check {
        label: format!("disagreements over {} points", rows.len()),
        value: c64(disagreements as f64, 0.0),
        reference: Complex64::default(),
        error: disagreements as f64,
        tol: 0.0,
        passed: disagreements == 0,
    }];
    notes.push(format!("{crossing} of {} grid points wind around the origin", rows.len()));
    SuiteReport::new(7, checks, vec![], notes)
}

fn eigenvalues(opts: &VerifyOptions) -> SuiteReport {
    let mut r = rng(opts, 8);
    let cz = |r: &mut ChaCha8Rng| c64(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
    let (mut worst_param, mut worst_red) = (0.0f64, 0.0f64);
    let mut errors = 0usize;
    for _ in 0..10_000 {
        let (s1, s2) = (cz(&mut r), cz(&mut r));
        let root = eigenvalue_minparabolic_root(s1, s1 + s2, Complex64::default());
        match eigenvalue_minparabolic_power(s1, s2, -s1 - s2) {
            Ok(p) => worst_param = worst_param.max(rel_err(root, p)),
            Err(_) => errors += 1,
        }
        let (sf, s) = (cz(&mut r), cz(&mut r));
        let reduced = 2.0 * (sf * (sf - 1.0) + 3.0 * s * (s - 1.0));
        match eigenvalue_minparabolic_power(sf + s, -sf + s, -2.0 * s) {
            Ok(p) => worst_red = worst_red.max(rel_err(p, reduced)),
            Err(_) => errors += 1,
        }
    }
    let max_check = |label: &str, worst: f64| Check {
        label: label.into(),
        value: c64(worst, 0.0),
        reference: Complex64::default(),
        error: worst,
        tol: tol::EIGENVALUES,
        passed: worst <= tol::EIGENVALUES && errors == 0,
    };
    let checks = vec![
        max_check("root vs power form, 1e4 samples (max rel)", worst_param),
        max_check("cuspidal-data reduction, 1e4 samples (max rel)", worst_red),
    ];
    SuiteReport::new(8, checks, vec![], vec![format!("{errors} evaluations rejected")])
}

fn eisenstein(opts: &VerifyOptions) -> SuiteReport {
    let mut grid = Vec::new();
    for re in [2.0, 2.5, 3.0] {
        for im in [0.0, 1.0] {
            for z in [(0.0, 1.0), (0.3, 1.2)] {
                grid.push((c64(re, im), z));
            }
        }
    }
    let mut checks: Vec<Check> = grid
        .par_iter()
        .map(|&(s, (x, y))| {
            let label = format!("modes s={}{:+}i z={x}+{y}i", s.re, s.im);
            let run = || -> Result<Check> {
                let z = UpperHalfPoint::new(x, y)?;
                let f = eisenstein_gl2(&EisensteinParams::fourier(s), z)?;
                let l = eisenstein_gl2(&EisensteinParams::lattice(s), z)?;
                Ok(Check::rel(label.clone(), f, l, tol::EISENSTEIN_MODES))
            };
            run().unwrap_or_else(|e| Check::failed(&label, &e))
        })
        .collect();
    let mut r = rng(opts, 9);
    for _ in 0..5 {
        let (x, y) = (r.gen_range(-0.5..0.5), r.gen_range(0.8..1.6));
        let s = c64(0.5, r.gen_range(-10.0..10.0));
        let label = format!("s=½{:+.3}i z={x:.3}+{y:.3}i", s.im);
        let run = || -> Result<[Check; 2]> {
            let z = UpperHalfPoint::new(x, y)?;
            let p = EisensteinParams::fourier(s);
            let e = eisenstein_gl2(&p, z)?;
            let t = eisenstein_gl2(&p, z.translate())?;
            let i = eisenstein_gl2(&p, z.invert())?;
            Ok([
                Check::rel(format!("z+1, {label}"), t, e, tol::EISENSTEIN_INVARIANCE),
                Check::rel(format!("−1/z, {label}"), i, e, tol::EISENSTEIN_INVARIANCE),
            ])
        };
        match run() {
            Ok(c) => checks.extend(c),
            Err(e) => checks.push(Check::failed(&label, &e)),
        }
    }
    SuiteReport::new(
        9,
        checks,
        vec![],
        vec!["lattice mode: coprime (c, d) with |cz+d| ≤ 400 plus the mean-density tail".into()],
    )
}
