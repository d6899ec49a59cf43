use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::{Error, Result};

/// `K_ν(x) = ∫₀^∞ e^{−x cosh t} cosh(νt) dt` for `x > 0`, `|Re ν| < 10`, `|Im ν| ≤ 50`.
///
/// The integral is written as `½∫_ℝ e^{−x cosh w + νw} dw` and taken along
/// `Im w = β`, with `β` chosen so that the oscillation of `e^{i Im ν·w}` is
/// absorbed near the saddle. On that line the integrand has the same size as
/// the result, so imaginary orders do not suffer the `e^{−π|Im ν|/2}`
/// cancellation of the real axis. The trapezoidal rule converges
/// geometrically for this entire, doubly-exponentially decaying integrand.
///
/// ```
/// use shintani::specfun::bessel_k;
/// use shintani::Complex64;
/// let k = bessel_k(Complex64::new(0.5, 0.0), 2.0).unwrap();
/// let exact = (std::f64::consts::PI / 4.0).sqrt() * (-2f64).exp();
/// assert!((k.re - exact).abs() < 1e-14);
/// ```
pub fn bessel_k(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidInput(format!("bessel_k needs x > 0, got {x}")));
    }
    if !(nu.re.abs() < 10.0 && nu.im.abs() <= 50.0) {
        return Err(Error::InvalidInput(format!("bessel_k order {nu} outside |Re ν| < 10, |Im ν| ≤ 50")));
    }
    // K_ν = K_{−ν}: work with Im ν ≥ 0
    let nu = if nu.im < 0.0 { -nu } else { nu };
    let (a, r) = (nu.re, nu.im);
    // keep the line away from Im w = π/2, where the decay in Re w is lost
    let beta = if r == 0.0 { 0.0 } else { (r / x).min(1.0).asin().min(FRAC_PI_2 - (6.0 / r).min(0.5)) };
    let cb = beta.cos();
    let sb = beta.sin();
    let d = ((FRAC_PI_2 - beta).min(0.5) / 2.0).max(0.02);
    let h = std::f64::consts::PI * d / 36.0;
    // real part of the exponent along the line, and its maximum
    let expo = |t: f64| -x * cb * t.cosh() + a * t - r * beta;
    let tstar = (a / (x * cb)).asinh();
    let peak = expo(tstar);
    let cut = peak - 46.0;
    let term = |t: f64| Complex64::new(expo(t) - peak, -x * sb * t.sinh() + r * t + a * beta).exp();
    let mut sum = term(tstar);
    for dir in [1.0, -1.0] {
        let mut k = 1.0;
        loop {
            let t = tstar + dir * k * h;
            if expo(t) < cut {
                break;
            }
            sum += term(t);
            k += 1.0;
            if k > 4e6 {
                return Err(Error::NoConvergence("bessel_k: trapezoid range exploded".into()));
            }
        }
    }
    let mut v = sum * (0.5 * h) * peak.exp();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow(format!("K_{nu}({x}) overflows")));
    }
    if nu.im == 0.0 || nu.re == 0.0 {
        v.im = 0.0;
    }
    Ok(v)
}
