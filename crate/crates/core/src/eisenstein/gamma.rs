use crate::{Complex64, Error, Result};
use std::f64::consts::PI;

// B_{2k} / (2k(2k−1)) for k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// `log Γ(z)` up to a multiple of `2πi`, for `Re z ≥ ½`.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(1.0, 0.0);
    while z.norm() < 17.0 {
        shift *= z;
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::default();
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift.ln()
}

/// Complex Gamma function.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Pole { function: "gamma", at: z });
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z).exp());
    }
    let g = ln_gamma_right(1.0 - z).exp();
    Ok(PI / ((PI * z).sin() * g))
}
