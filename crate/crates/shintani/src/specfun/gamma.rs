use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

// B_{2k} / (2k (2k − 1)) for k = 1..12
const STIRLING: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    77_683.0 / 5_796.0,
    -236_364_091.0 / 1_506_960.0,
];

const SHIFT_TO: f64 = 15.0;

/// `log Γ(z)` on the branch continuous in `ℂ` minus the nonpositive real axis,
/// with `log Γ(z + 1) = log z + log Γ(z)` (principal `log z`) holding everywhere.
///
/// ```
/// use shintani::specfun::log_gamma;
/// use shintani::Complex64;
/// let v = log_gamma(Complex64::new(0.5, 0.0)).unwrap();
/// assert!((v.re - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
/// ```
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("log_gamma at non-finite {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.re)));
    }
    if z.re < -1e6 {
        return Err(Error::InvalidInput("log_gamma: Re z too negative".into()));
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}

/// `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}
