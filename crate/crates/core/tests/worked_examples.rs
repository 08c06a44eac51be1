use branching_core::continuation::{
    branching_difference, continue_integral, path_difference, ContinuationOptions, CorrectionMethod, Numerator,
};
use branching_core::paths::{BranchSign, WPath};
use branching_core::quadrature::{integrate, QuadOptions};
use branching_core::spectral::SpectralModel;
use branching_core::{rel_err, Complex64, Error};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `∫ N/(λ − λ_w)^ν ds` over a polyline from `½ − iT` to `½ + iT` that leaves
/// the line to pass left of `s*` and right of `1 − s*`: the contour pushed
/// ahead of the moving poles instead of picking up residues.
fn deformed_contour_integral(model: &SpectralModel, n: &Numerator, w: Complex64, s_star: Complex64) -> Complex64 {
    let t_max = 30.0;
    let m = 1.0 - s_star;
    let h = (s_star.im.abs() / 2.0).min(0.3);
    let bump = |p: Complex64, dx: f64| {
        vec![c(0.5, p.im - h), c(p.re + dx, p.im - h), c(p.re + dx, p.im + h), c(0.5, p.im + h)]
    };
    let (lo, hi) = if s_star.im < m.im { (s_star, m) } else { (m, s_star) };
    let dx = |p: Complex64| if p == s_star { -0.3 } else { 0.3 };
    let mut pts = vec![c(0.5, -t_max)];
    pts.extend(bump(lo, dx(lo)));
    pts.extend(bump(hi, dx(hi)));
    pts.push(c(0.5, t_max));
    let o = QuadOptions { abs_tol: 1e-15, rel_tol: 1e-12, max_intervals: 20_000 };
    pts.windows(2)
        .map(|p| {
            let (a, b) = (p[0], p[1]);
            integrate(
                |u| {
                    let s = a + (b - a) * u;
                    let d = model.denominator_base(s, w);
                    let d = if model.nu == 2 { d * d } else { d };
                    n.value(s).unwrap() / d * (b - a)
                },
                0.0,
                1.0,
                &[],
                &o,
            )
            .unwrap()
            .value
        })
        .sum()
}

#[test]
fn continued_value_matches_the_deformed_contour() {
    let m = SpectralModel::hilbert_with_norm(1.0).unwrap();
    let n = Numerator::gaussian(1.0).unwrap();
    let o = ContinuationOptions::default();
    let to_w1 = WPath::new(vec![c(1.2, 2.0), c(0.2, 2.0)], "g1").unwrap();
    let r = continue_integral(&n, &m, &to_w1, &o).unwrap();
    assert_eq!(r.corrections.len(), 1);
    let oracle = deformed_contour_integral(&m, &n, to_w1.end(), r.s_end());
    assert!(rel_err(r.endpoint_value, oracle) < 1e-9, "{} vs {oracle}", r.endpoint_value);

    // on down to the real axis, staying left of the line: both poles are real
    // there, so the jump is measured on loops instead of a bent contour
    let to_w2 = WPath::new(vec![c(1.2, 2.0), c(0.2, 2.0), c(0.2, 0.0)], "g1'").unwrap();
    let r2 = continue_integral(&n, &m, &to_w2, &o).unwrap();
    assert_eq!(r2.trace.final_sign, BranchSign::Minus);
    assert!(r2.s_end().im.abs() < 1e-12 && r2.s_end().re < 0.0);
    let numeric = ContinuationOptions { method: CorrectionMethod::Numeric, ..o };
    let r3 = continue_integral(&n, &m, &to_w2, &numeric).unwrap();
    assert!(rel_err(r2.endpoint_value, r3.endpoint_value) < 1e-9);
}

#[test]
fn inner_crossing_needs_no_correction() {
    let m = SpectralModel::hilbert_with_norm(1.0).unwrap();
    let n = Numerator::gaussian(1.0).unwrap();
    let p = WPath::new(vec![c(1.2, 0.5), c(0.2, 0.5)], "g2").unwrap();
    let r = continue_integral(&n, &m, &p, &ContinuationOptions::default()).unwrap();
    assert!(r.corrections.is_empty());
    assert_eq!(r.endpoint_value, r.line_value);
}

#[test]
fn hilbert_branching_difference() {
    let m = SpectralModel::hilbert_with_norm(1.0).unwrap();
    let n = Numerator::gaussian(1.0).unwrap();
    let w = c(0.25, 2.5);
    let p1 = WPath::new(vec![c(1.2, 2.0), c(0.25, 2.0), w], "outer").unwrap();
    let p2 = WPath::new(vec![c(1.2, 0.3), c(0.25, 0.3), w], "inner").unwrap();
    let d = branching_difference(&n, &m, w, &p1, &p2, &ContinuationOptions::default()).unwrap();
    assert!(d.rel_agreement <= 1e-6, "{d:?}");
    let s = d.closed_form.s_star;
    let expect_s = 0.5 - ((w - 0.5) * (w - 0.5) + 1.0).sqrt();
    assert!((s - expect_s).norm() < 1e-12);
    let literal = 4.0 * std::f64::consts::PI * Complex64::i() * n.value(s).unwrap() / (1.0 - 2.0 * s);
    assert!(rel_err(d.numeric, literal) <= 1e-6);
}

#[test]
fn gl3_branching_difference_with_the_derivative_term() {
    let m = SpectralModel::gl3_cuspidal(c(0.0, 0.0)).unwrap();
    let n = Numerator::gaussian(1.0).unwrap();
    let sc = m.c.sqrt();
    let w = c(0.25, 2.5 * sc);
    let p1 = WPath::new(vec![c(1.2, 2.0 * sc), c(0.25, 2.0 * sc), w], "outer").unwrap();
    let p2 = WPath::new(vec![c(1.2, 0.3 * sc), c(0.25, 0.3 * sc), w], "inner").unwrap();
    let d = branching_difference(&n, &m, w, &p1, &p2, &ContinuationOptions::default()).unwrap();
    assert!(d.rel_agreement <= 1e-6, "{d:?}");
    assert!(d.closed_form.numerator_derivative.norm() > 0.0);
}

#[test]
fn both_inside_gives_no_difference() {
    let m = SpectralModel::hilbert_with_norm(1.0).unwrap();
    let n = Numerator::gaussian(1.0).unwrap();
    let w = c(0.25, 0.8);
    let p1 = WPath::new(vec![c(1.2, 0.3), c(0.25, 0.3), w], "a").unwrap();
    let p2 = WPath::new(vec![c(1.2, -0.6), c(0.25, -0.6), w], "b").unwrap();
    let (numeric, expected) = path_difference(&n, &m, &p1, &p2, &ContinuationOptions::default()).unwrap();
    assert_eq!(numeric, Complex64::new(0.0, 0.0));
    assert!(expected.is_none());
    let e = branching_difference(&n, &m, w, &p1, &p2, &ContinuationOptions::default());
    assert!(matches!(e, Err(Error::InvalidPathPair(_))));
}

#[test]
fn gl2_correction_at_any_height() {
    let m = SpectralModel::gl2q();
    let n = Numerator::gaussian(1.5).unwrap();
    let w = c(0.2, 0.4);
    for h in [0.05, 0.4, 3.0, -2.0] {
        let mut pts = vec![c(1.2, h), c(0.2, h)];
        if h != w.im {
            pts.push(w);
        }
        let r = continue_integral(&n, &m, &WPath::new(pts, "h").unwrap(), &ContinuationOptions::default()).unwrap();
        assert_eq!(r.corrections.len(), 1, "height {h}");
        assert!((r.s_end() - w).norm() < 1e-12);
    }
}
