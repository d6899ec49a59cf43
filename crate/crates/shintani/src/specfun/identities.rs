//! Right-hand sides of the integral representations of `K_ν`, evaluated by quadrature.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{bessel_k, log_gamma};
use crate::quad::{exp_sinh, fourier_cos, QuadratureConfig};
use crate::Result;

/// `½ (z/2)^ν ∫₀^∞ exp(−t − z²/(4t)) t^{−ν−1} dt`.
///
/// For `|Im ν| > 1` the ray is rotated to `t = s e^{iφ}` with `φ` opposite in
/// sign to `Im ν`, which removes most of the `e^{−π|Im ν|/2}` cancellation.
pub fn bessel_power_integral(nu: Complex64, z: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let r = nu.im;
    let phi = if r.abs() > 1.0 { -r.signum() * (FRAC_PI_2 - (6.0 / r.abs()).min(0.5)) } else { 0.0 };
    let rot = Complex64::from_polar(1.0, phi);
    let q = exp_sinh(
        |s| {
            if s == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            (-rot * s - z * z / (4.0 * s) / rot).exp() * Complex64::new(s, 0.0).powc(-nu - 1.0)
        },
        0.0,
        cfg,
    )?;
    let turn = (-nu * Complex64::new(0.0, phi)).exp();
    Ok(Complex64::new(z / 2.0, 0.0).powc(nu) * turn * q.value * 0.5)
}

/// `Γ(ν+½)(2z)^ν / (√π x^ν) ∫₀^∞ cos(xt) (t² + z²)^{−ν−½} dt`, for `Re ν > −½`.
///
/// This is the standard (Basset) form; with `Γ(ν+1)` in place of `Γ(ν+½)` the
/// identity is off by the ratio of the two.
pub fn bessel_cosine_integral(nu: Complex64, x: f64, z: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let q = fourier_cos(|t| Complex64::new(t * t + z * z, 0.0).powc(-nu - 0.5), x, cfg)?;
    let pre = (log_gamma(nu + 0.5)? + nu * (2.0 * z).ln() - 0.5 * PI.ln() - nu * x.ln()).exp();
    Ok(pre * q.value)
}

/// `½ ∫₀^∞ exp(−t/2 − (z² + ζ²)/(2t)) K_ν(zζ/t) dt/t`, which equals `K_ν(z) K_ν(ζ)`.
pub fn bessel_product_integral(nu: Complex64, z: f64, zeta: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let q = exp_sinh(
        |t| {
            if t == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let e = (-t / 2.0 - (z * z + zeta * zeta) / (2.0 * t)).exp();
            if e == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            match bessel_k(nu, z * zeta / t) {
                Ok(k) => k * (e / t),
                Err(_) => Complex64::new(f64::NAN, 0.0),
            }
        },
        0.0,
        cfg,
    )?;
    Ok(q.value * 0.5)
}
