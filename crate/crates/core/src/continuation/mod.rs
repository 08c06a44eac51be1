//! Pathwise continuation of the spectral line integrals.
//!
//! Continuing `I(w) = ∫ N(s)/(λ(s) − λ_w)^ν ds` from `Re w > ½` along a path
//! drags the pole `s*` that started right of the line. If it ends up left of
//! the line (the radicand wound around the origin), the continued value is
//! the line integral plus the residue jump carried across by `s*` and its
//! mirror `1 − s*`.

mod numerator;
mod planar;

pub use numerator::{Numerator, NumeratorKind};
pub use planar::{verify_no_branching_planar, PlanarNoBranchingReport};

use crate::paths::{sample_path, track_sqrt_along, BranchSign, BranchTrace, TrackOptions, WPath};
use crate::quadrature::{direct_line_integral, integrate_try, LineIntegrandSpec, QuadOptions};
use crate::spectral::SpectralModel;
use crate::{Complex64, Error, Result, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// How the jump picked up by a crossing pole is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionMethod {
    /// Closed-form residues.
    #[default]
    Residue,
    /// Contour integrals around `s*` and `1 − s*` by quadrature.
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuationOptions {
    pub t_max: f64,
    pub tol: f64,
    pub method: CorrectionMethod,
    /// Endpoints need `|Re w_end − ½|` above this.
    pub min_end_offset: f64,
    /// Samples per unit of path length before adaptive refinement.
    pub density: f64,
    pub track: TrackOptions,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self {
            t_max: 30.0,
            tol: 1e-11,
            method: CorrectionMethod::Residue,
            min_end_offset: 0.05,
            density: 64.0,
            track: TrackOptions::default(),
        }
    }
}

/// Follows `s(w) = ½ + √((w − ½)² + c)` along `path`, starting on the pole
/// right of the critical line.
pub fn continue_pole(model: &SpectralModel, path: &WPath, opts: &ContinuationOptions) -> Result<BranchTrace> {
    if model.is_planar() {
        return Err(Error::InvalidModel("pole tracking needs a line model".into()));
    }
    if path.start().re <= 0.5 {
        return Err(Error::StartInLeftHalfPlane(path.start()));
    }
    let crossings = path.vertical_line_crossings(0.5);
    if crossings.len() > 1 {
        return Err(Error::InvalidPath(format!(
            "path crosses Re w = ½ {} times; only single crossings are supported",
            crossings.len()
        )));
    }
    let step = (1.0 / opts.density).min(path.length() / 16.0);
    let w = sample_path(path, step)?;
    track_sqrt_along(&w.samples, |w| model.radicand(w), BranchSign::Plus, &opts.track)
}

/// `½ + √r` along a pole trace.
pub fn pole_trajectory(trace: &BranchTrace) -> Vec<Complex64> {
    trace.sqrt_samples.samples.iter().map(|r| 0.5 + r).collect()
}

/// The term a continuation picks up when `s*` has crossed the line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionTerm {
    pub s_star: Complex64,
    pub nu: u32,
    /// Right-branch minus left-branch singular value.
    pub coefficient: Complex64,
    pub numerator_value: Complex64,
    /// Multiplies `N'(s*)`; zero for simple poles.
    pub derivative_coefficient: Complex64,
    pub numerator_derivative: Complex64,
    pub term_value: Complex64,
}

/// Both closed forms of `∫ ds/(λ(s) − λ_w)^ν` as functions of `s*`: the one
/// valid while `s*` is right of the line, and the one valid once it is left.
pub fn singular_closed_forms(model: &SpectralModel, s_star: Complex64) -> Result<(Complex64, Complex64)> {
    let a = model.a;
    let d = 2.0 * s_star - 1.0;
    match model.nu {
        1 => Ok((2.0 * PI * I / (a * (1.0 - 2.0 * s_star)), 2.0 * PI * I / (a * d))),
        2 => {
            let v = 4.0 * PI * I / (a * a * d * d * d);
            Ok((v, -v))
        }
        nu => Err(Error::InvalidModel(format!("pole order {nu} is not supported"))),
    }
}

impl CorrectionTerm {
    pub fn closed_form(model: &SpectralModel, numerator: &Numerator, s_star: Complex64) -> Result<Self> {
        let (right, left) = singular_closed_forms(model, s_star)?;
        let coefficient = right - left;
        let numerator_value = numerator.value(s_star)?;
        let (derivative_coefficient, numerator_derivative) = if model.nu == 2 {
            let d = 2.0 * s_star - 1.0;
            (-4.0 * PI * I / (model.a * model.a * d * d), numerator.derivative(s_star)?)
        } else {
            (Complex64::default(), Complex64::default())
        };
        Ok(Self {
            s_star,
            nu: model.nu,
            coefficient,
            numerator_value,
            derivative_coefficient,
            numerator_derivative,
            term_value: coefficient * numerator_value + derivative_coefficient * numerator_derivative,
        })
    }

    /// Same bookkeeping with the jump measured by quadrature on two circles.
    pub fn numeric(
        model: &SpectralModel,
        numerator: &Numerator,
        w: Complex64,
        s_star: Complex64,
        tol: f64,
    ) -> Result<Self> {
        let mut t = Self::closed_form(model, numerator, s_star)?;
        t.term_value = residue_jump_numeric(model, numerator, w, s_star, tol)?;
        Ok(t)
    }
}

fn loop_integral<F>(f: F, centre: Complex64, rho: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let opts = QuadOptions { abs_tol: 1e-300, rel_tol: tol, max_intervals: 4000 };
    let r = integrate_try(
        |th| {
            let e = Complex64::from_polar(rho, th);
            Ok(f(centre + e)? * I * e)
        },
        0.0,
        2.0 * PI,
        &[PI],
        &opts,
    )?;
    Ok(r.value)
}

/// `∮_{1−s*} − ∮_{s*}` of `N/(λ − λ_w)^ν`, both counterclockwise.
pub fn residue_jump_numeric(
    model: &SpectralModel,
    numerator: &Numerator,
    w: Complex64,
    s_star: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let mirror = 1.0 - s_star;
    let mut rho = ((s_star - mirror).norm() / 3.0).min(0.5);
    if let NumeratorKind::EisensteinProductGL2 { .. } = numerator.kind {
        for p in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)] {
            rho = rho.min(0.5 * (s_star - p).norm()).min(0.5 * (mirror - p).norm());
        }
    }
    if rho < 1e-8 {
        return Err(Error::PoleOnContour(s_star));
    }
    let f = |s: Complex64| -> Result<Complex64> {
        let d = model.denominator_base(s, w);
        let d = if model.nu == 2 { d * d } else { d };
        Ok(numerator.value(s)? / d)
    };
    Ok(loop_integral(f, mirror, rho, tol)? - loop_integral(f, s_star, rho, tol)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuationResult {
    pub endpoint_value: Complex64,
    /// The line integral at the endpoint, without corrections.
    pub line_value: Complex64,
    pub line_error: f64,
    pub corrections: Vec<CorrectionTerm>,
    pub trace: BranchTrace,
}

#[derive(Serialize)]
struct ContinuationJson {
    endpoint: Complex64,
    corrections: Vec<CorrectionJson>,
    crossings: i32,
    final_sign: i32,
    line_value: Complex64,
    line_error: f64,
    trace_len: usize,
}

#[derive(Serialize)]
struct CorrectionJson {
    s_star: Complex64,
    nu: u32,
    coefficient: Complex64,
    numerator_value: Complex64,
    derivative_coefficient: Complex64,
    numerator_derivative: Complex64,
    term_value: Complex64,
}

impl ContinuationResult {
    /// `{endpoint, corrections: [{s_star, nu, coefficient, numerator_value, term_value, …}], crossings, …}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let j = ContinuationJson {
            endpoint: self.endpoint_value,
            corrections: self
                .corrections
                .iter()
                .map(|c| CorrectionJson {
                    s_star: c.s_star,
                    nu: c.nu,
                    coefficient: c.coefficient,
                    numerator_value: c.numerator_value,
                    derivative_coefficient: c.derivative_coefficient,
                    numerator_derivative: c.numerator_derivative,
                    term_value: c.term_value,
                })
                .collect(),
            crossings: self.trace.cut_crossings,
            final_sign: self.trace.final_sign.into(),
            line_value: self.line_value,
            line_error: self.line_error,
            trace_len: self.trace.sqrt_samples.len(),
        };
        serde_json::to_value(j).expect("plain data serializes")
    }

    pub fn s_end(&self) -> Complex64 {
        0.5 + self.trace.end_root()
    }
}

/// Continues `I(w)` along `path` and evaluates it at the path's end.
pub fn continue_integral(
    numerator: &Numerator,
    model: &SpectralModel,
    path: &WPath,
    opts: &ContinuationOptions,
) -> Result<ContinuationResult> {
    let w_end = path.end();
    if (w_end.re - 0.5).abs() <= opts.min_end_offset {
        return Err(Error::InvalidPath(format!(
            "endpoint {w_end} is within {} of the critical line",
            opts.min_end_offset
        )));
    }
    if model.nu == 1 && !numerator.decays() && numerator.constant_value().is_none() {
        return Err(Error::InvalidArgument("numerator does not decay on the line".into()));
    }
    let trace = continue_pole(model, path, opts)?;
    let spec = LineIntegrandSpec::new(numerator.clone(), model.clone(), w_end, opts.t_max, opts.tol)?;
    let line = direct_line_integral(&spec)?;
    let s_end = 0.5 + trace.end_root();
    let mut corrections = Vec::new();
    if trace.final_sign == BranchSign::Minus {
        debug_assert!(s_end.re < 0.5);
        let term = match opts.method {
            CorrectionMethod::Residue => CorrectionTerm::closed_form(model, numerator, s_end)?,
            CorrectionMethod::Numeric => CorrectionTerm::numeric(model, numerator, w_end, s_end, opts.tol)?,
        };
        corrections.push(term);
    }
    let endpoint_value = line.value + corrections.iter().map(|c| c.term_value).sum::<Complex64>();
    Ok(ContinuationResult { endpoint_value, line_value: line.value, line_error: line.error, corrections, trace })
}

/// `I_{γ₁}(w) − I_{γ₂}(w)` measured numerically, next to the closed-form term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchingDifference {
    pub numeric: Complex64,
    pub closed_form: CorrectionTerm,
    /// `|numeric − closed_form| / |closed_form|`.
    pub rel_agreement: f64,
    pub crossing_heights: (f64, f64),
}

fn crossing_height(path: &WPath) -> Result<f64> {
    match path.vertical_line_crossings(0.5).as_slice() {
        [(h, _)] => Ok(*h),
        c => Err(Error::InvalidPathPair(format!("each path must cross Re w = ½ exactly once, got {}", c.len()))),
    }
}

/// Continues along `path1` (crossing outside the branch points) and `path2`
/// (crossing between them) to `w_end` and compares the difference with the
/// closed-form correction term.
pub fn branching_difference(
    numerator: &Numerator,
    model: &SpectralModel,
    w_end: Complex64,
    path1: &WPath,
    path2: &WPath,
    opts: &ContinuationOptions,
) -> Result<BranchingDifference> {
    let sqrt_c = model.c.max(0.0).sqrt();
    if sqrt_c <= 0.0 {
        return Err(Error::InvalidPathPair("branching needs c > 0".into()));
    }
    if w_end.re >= 0.5 {
        return Err(Error::InvalidPathPair(format!("w_end = {w_end} must lie left of the critical line")));
    }
    for p in [path1, path2] {
        if (p.end() - w_end).norm() > 1e-12 * (1.0 + w_end.norm()) {
            return Err(Error::InvalidPathPair(format!("path {:?} ends at {}, not {w_end}", p.label(), p.end())));
        }
    }
    let (h1, h2) = (crossing_height(path1)?, crossing_height(path2)?);
    if !(h1.abs() > sqrt_c && h2.abs() < sqrt_c) {
        return Err(Error::InvalidPathPair(format!("need |h1| > √c > |h2|, got h1 = {h1}, h2 = {h2}, √c = {sqrt_c}")));
    }
    let (numeric, closed_form) = path_difference(numerator, model, path1, path2, opts)?;
    let closed_form = closed_form
        .ok_or_else(|| Error::InvalidPathPair("the outer path did not move the pole across the line".into()))?;
    let rel_agreement = (numeric - closed_form.term_value).norm() / closed_form.term_value.norm();
    Ok(BranchingDifference { numeric, closed_form, rel_agreement, crossing_heights: (h1, h2) })
}

/// `I_{γ₁} − I_{γ₂}` with numerically measured jumps, for any two paths with a
/// common endpoint, plus the expected closed-form term when exactly one of the
/// two moved the pole across.
pub fn path_difference(
    numerator: &Numerator,
    model: &SpectralModel,
    path1: &WPath,
    path2: &WPath,
    opts: &ContinuationOptions,
) -> Result<(Complex64, Option<CorrectionTerm>)> {
    if (path1.end() - path2.end()).norm() > 1e-12 * (1.0 + path1.end().norm()) {
        return Err(Error::InvalidPathPair("paths must share their endpoint".into()));
    }
    let numeric_opts = ContinuationOptions { method: CorrectionMethod::Numeric, ..*opts };
    let r1 = continue_integral(numerator, model, path1, &numeric_opts)?;
    let r2 = continue_integral(numerator, model, path2, &numeric_opts)?;
    let numeric = r1.endpoint_value - r2.endpoint_value;
    let expected = match (r1.corrections.len(), r2.corrections.len()) {
        (1, 0) => Some(CorrectionTerm::closed_form(model, numerator, r1.s_end())?),
        (0, 1) => {
            let mut t = CorrectionTerm::closed_form(model, numerator, r2.s_end())?;
            t.term_value = -t.term_value;
            Some(t)
        }
        _ => None,
    };
    Ok((numeric, expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c64, rel_err};

    fn horizontal(height: f64, w_end: Complex64) -> WPath {
        let mut pts = vec![c64(1.2, height), c64(w_end.re, height)];
        if w_end.im != height {
            pts.push(w_end);
        }
        WPath::new(pts, "h").unwrap()
    }

    #[test]
    fn pole_branch_by_crossing_height() {
        let m = SpectralModel::hilbert_with_norm(1.0).unwrap();
        let o = ContinuationOptions::default();
        let p = WPath::new(vec![c64(1.5, 2.0), c64(-0.5, 2.0)], "").unwrap();
        assert_eq!(continue_pole(&m, &p, &o).unwrap().final_sign, BranchSign::Minus);
        let p = WPath::new(vec![c64(1.5, 0.5), c64(-0.5, 0.5)], "").unwrap();
        assert_eq!(continue_pole(&m, &p, &o).unwrap().final_sign, BranchSign::Plus);
        let p = WPath::new(vec![c64(1.5, 0.5), c64(0.9, 3.0)], "").unwrap();
        let t = continue_pole(&m, &p, &o).unwrap();
        assert_eq!(t.final_sign, BranchSign::Plus);
        let want = m.poles(c64(0.9, 3.0)).unwrap().s_plus;
        assert!((0.5 + t.end_root() - want).norm() < 1e-12);
    }

    #[test]
    fn start_and_multi_crossing_rejected() {
        let m = SpectralModel::gl2q();
        let o = ContinuationOptions::default();
        let p = WPath::new(vec![c64(0.2, 1.0), c64(1.0, 1.0)], "").unwrap();
        assert!(matches!(continue_pole(&m, &p, &o), Err(Error::StartInLeftHalfPlane(_))));
        let p = WPath::parse("1,1;0,1;1,-1", "").unwrap();
        assert!(matches!(continue_pole(&m, &p, &o), Err(Error::InvalidPath(_))));
        let p = WPath::parse("1,1;0.5,0", "").unwrap();
        assert!(matches!(continue_pole(&m, &p, &o), Err(Error::BranchPointCollision { .. })));
    }

    #[test]
    fn gl2_trivial_character_correction() {
        let m = SpectralModel::gl2q();
        let n = Numerator::gaussian(1.0).unwrap();
        let w_end = c64(0.2, 0.8);
        let r = continue_integral(&n, &m, &horizontal(0.8, w_end), &ContinuationOptions::default()).unwrap();
        assert_eq!(r.corrections.len(), 1);
        let expected = n.value(w_end).unwrap() * 4.0 * PI * I / (1.0 - 2.0 * w_end);
        assert!(rel_err(r.corrections[0].term_value, expected) < 1e-12);
        assert!((r.s_end() - w_end).norm() < 1e-12);
        let o = ContinuationOptions { method: CorrectionMethod::Numeric, ..Default::default() };
        let rn = continue_integral(&n, &m, &horizontal(0.8, w_end), &o).unwrap();
        assert!(rel_err(rn.endpoint_value, r.endpoint_value) < 1e-10);
    }

    #[test]
    fn inner_crossing_has_no_correction() {
        let m = SpectralModel::hilbert_with_norm(1.0).unwrap();
        let n = Numerator::gaussian(1.0).unwrap();
        let w_end = c64(0.25, 2.5);
        let p = WPath::new(vec![c64(1.2, 0.5), c64(0.25, 0.5), w_end], "").unwrap();
        let r = continue_integral(&n, &m, &p, &ContinuationOptions::default()).unwrap();
        assert!(r.corrections.is_empty());
    }

    #[test]
    fn hilbert_branching_reference() {
        let m = SpectralModel::hilbert_with_norm(1.0).unwrap();
        let n = Numerator::gaussian(1.0).unwrap();
        let w_end = c64(0.25, 2.5);
        let p1 = WPath::new(vec![c64(1.2, 2.0), c64(0.25, 2.0), w_end], "γ1").unwrap();
        let p2 = WPath::new(vec![c64(1.2, 0.3), c64(0.25, 0.3), w_end], "γ2").unwrap();
        let d = branching_difference(&n, &m, w_end, &p1, &p2, &ContinuationOptions::default()).unwrap();
        let s_ref = c64(0.2275320802159696649, 2.2938480262021363453);
        assert!((d.closed_form.s_star - s_ref).norm() < 1e-12);
        let want = c64(-0.0030568028523814289844, 0.014883265741919573488);
        assert!(rel_err(d.closed_form.term_value, want) < 1e-12);
        assert!(d.rel_agreement < 1e-8);
        // order matters
        assert!(matches!(
            branching_difference(&n, &m, w_end, &p2, &p1, &ContinuationOptions::default()),
            Err(Error::InvalidPathPair(_))
        ));
    }

    #[test]
    fn gl3_double_pole_jump() {
        let m = SpectralModel::gl3_cuspidal(c64(0.0, 0.0)).unwrap();
        let n = Numerator::gaussian(1.0).unwrap();
        let w_end = c64(0.25, 2.5);
        let p1 = WPath::new(vec![c64(1.2, 2.0), c64(0.25, 2.0), w_end], "").unwrap();
        let p2 = WPath::new(vec![c64(1.2, 0.1), c64(0.25, 0.1), w_end], "").unwrap();
        let d = branching_difference(&n, &m, w_end, &p1, &p2, &ContinuationOptions::default()).unwrap();
        let want = c64(-3.4274297655421130023e-5, 1.6494286007448095822e-4);
        assert!(rel_err(d.closed_form.term_value, want) < 1e-10);
        assert!(d.rel_agreement < 1e-8);
    }

    #[test]
    fn same_class_paths_agree() {
        let m = SpectralModel::hilbert_with_norm(1.0).unwrap();
        let n = Numerator::gaussian(1.0).unwrap();
        let w_end = c64(0.25, 2.5);
        let a = WPath::new(vec![c64(1.2, 0.2), c64(0.25, 0.2), w_end], "").unwrap();
        let b = WPath::new(vec![c64(1.2, 0.6), c64(0.25, 0.6), w_end], "").unwrap();
        let (diff, expected) = path_difference(&n, &m, &a, &b, &ContinuationOptions::default()).unwrap();
        assert!(expected.is_none());
        assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn coefficient_is_difference_of_closed_forms() {
        for m in [SpectralModel::gl2q(), SpectralModel::gl3_cuspidal(c64(1.0, 0.0)).unwrap()] {
            let s = c64(0.3, 1.7);
            let t = CorrectionTerm::closed_form(&m, &Numerator::constant(c64(1.0, 0.0)), s).unwrap();
            let (r, l) = singular_closed_forms(&m, s).unwrap();
            assert!((t.coefficient - (r - l)).norm() < 1e-14);
        }
    }
}
