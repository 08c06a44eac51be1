use crate::quadrature::{integrate, QuadOptions};
use crate::{Complex64, Error, Result};

/// Modified Bessel function `K_ν(x)` for complex order and real `x > 0`.
///
/// Evaluates `½∫ exp(−x cosh t + νt) dt` over a contour in the strip
/// `0 ≤ Im t ≤ π/2`: the real axis for `|Re t| ≥ U`, vertical connectors at
/// `±U`, and a horizontal segment through the saddle `t₀ = asinh(ν/x)`.
/// `U` is chosen so that the integrand on the connectors stays below the
/// saddle magnitude, which keeps the quadrature free of cancellation.
pub fn bessel_k(order: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("K_ν(x) needs x > 0, got {x}")));
    }
    // K_ν = K_{−ν} and K_{ν̄}(x) = conj K_ν(x)
    let mut nu = order;
    if nu.re < 0.0 {
        nu = -nu;
    }
    let conj = nu.im < 0.0;
    if conj {
        nu = nu.conj();
    }
    let v = contour_integral(nu, x)?;
    Ok(if conj { v.conj() } else { v })
}

fn contour_integral(nu: Complex64, x: f64) -> Result<Complex64> {
    let phi = |t: Complex64| -x * t.cosh() + nu * t;
    let t0 = (nu / x).asinh();
    let theta = t0.im.clamp(0.0, std::f64::consts::FRAC_PI_2);
    let peak = phi(Complex64::new(t0.re, theta)).re;
    let curvature = (x * t0.cosh()).norm().max(1e-3 * x.max(1.0));
    let width = (2.0 * std::f64::consts::PI / curvature).sqrt();

    let vertical_max = |u: f64| -> f64 {
        (0..=16).map(|k| phi(Complex64::new(u, theta * k as f64 / 16.0)).re).fold(f64::NEG_INFINITY, f64::max)
    };
    let mut u1 = t0.re.abs() + 1.0;
    while vertical_max(u1).max(vertical_max(-u1)) > peak + 1e-9 {
        u1 += 0.25;
    }
    // where the real-axis integrand is negligible next to the peak
    let mut lim = u1;
    while phi(Complex64::new(lim, 0.0)).re.max(phi(Complex64::new(-lim, 0.0)).re) > peak - 50.0 {
        lim += 0.25;
    }

    let scale = peak.exp() * width;
    let opts = QuadOptions { abs_tol: 1e-16 * scale, rel_tol: 1e-14, max_intervals: 20_000 };
    let e = |t: Complex64| phi(t).exp();
    let i = Complex64::new(0.0, 1.0);
    let mut total = Complex64::default();
    // real tails
    total += integrate(|u| e(Complex64::new(u, 0.0)), -lim, -u1, &[], &opts)?.value;
    total += integrate(|u| e(Complex64::new(u, 0.0)), u1, lim, &[], &opts)?.value;
    if theta > 0.0 {
        // up at −U, across, down at +U
        total += integrate(|y| e(Complex64::new(-u1, y)) * i, 0.0, theta, &[], &opts)?.value;
        total += integrate(|u| e(Complex64::new(u, theta)), -u1, u1, &[t0.re], &opts)?.value;
        total += integrate(|y| e(Complex64::new(u1, y)) * i, theta, 0.0, &[], &opts)?.value;
    } else {
        total += integrate(|u| e(Complex64::new(u, 0.0)), -u1, u1, &[t0.re], &opts)?.value;
    }
    Ok(total * 0.5)
}
