use super::gamma::gamma;
use crate::{Complex64, Error, Result};
use std::f64::consts::PI;

// B_2 .. B_24
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Riemann zeta by Euler–Maclaurin summation, with the functional equation
/// for `Re s < 0`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { function: "zeta", at: s });
    }
    if s.re < 0.0 {
        let t = 1.0 - s;
        let f = Complex64::new(2.0, 0.0).powc(s) * Complex64::new(PI, 0.0).powc(-t) * (0.5 * PI * s).sin();
        return Ok(f * gamma(t)? * euler_maclaurin(t));
    }
    Ok(euler_maclaurin(s))
}

fn euler_maclaurin(s: Complex64) -> Complex64 {
    let n = (0.8 * (s.norm() + 24.0)).ceil() as u32;
    let mut sum = Complex64::default();
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * nf / (s - 1.0) + 0.5 * n_pow;
    // running factor s(s+1)…(s+2k−2) / (2k)! · N^{−s−2k+1}
    let mut fac = s * n_pow / nf;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        if k > 0 {
            let j = 2.0 * k as f64;
            fac *= (s + j - 1.0) * (s + j) / (nf * nf);
            fact *= (j + 1.0) * (j + 2.0);
        }
        sum += fac * (b / fact);
    }
    sum
}
