use num_complex::Complex64;

use super::log_gamma;
use crate::quad::{tanh_sinh_unit, QuadResult, QuadratureConfig};
use crate::{Error, Result};

/// `∫₀¹ t^{b−1}(1 − t)^{c−b−1}(1 − zt)^{−a} dt` for `Re c > Re b > 0` and real `z < 1`.
///
/// Each half of the interval is mapped so that the endpoint power becomes a
/// pure phase: on `[0, ½]`, `t = ½ w^{1/Re b}`, and symmetrically on `[½, 1]`.
/// The transformed integrands are bounded, so the tanh-sinh tails are harmless
/// even when `Re b` or `Re(c − b)` is small.
pub fn euler_integral(a: Complex64, b: Complex64, c: Complex64, z: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    let cb = c - b;
    if !(b.re > 0.0 && cb.re > 0.0) {
        return Err(Error::InvalidInput(format!("Euler integral needs Re c > Re b > 0, got b={b}, c={c}")));
    }
    if !(z < 1.0) || !z.is_finite() {
        return Err(Error::InvalidInput(format!("Euler integral needs real z < 1, got {z}")));
    }
    let tail = |t: f64| rpow(1.0 - z * t, -a);
    let cp = rpow;
    // ∫₀^{½} t^{b−1}(1−t)^{c−b−1}(1−zt)^{−a} dt, t = ½ w^{1/β}
    let beta1 = b.re;
    let left = tanh_sinh_unit(
        |w, _| {
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let t = 0.5 * w.powf(1.0 / beta1);
            cp(w, b / beta1 - 1.0) * cp(1.0 - t, cb - 1.0) * tail(t)
        },
        cfg,
    )?;
    let left_scale = cp(0.5, b) / beta1;
    let beta2 = cb.re;
    let right = tanh_sinh_unit(
        |w, _| {
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let s = 0.5 * w.powf(1.0 / beta2);
            cp(w, cb / beta2 - 1.0) * cp(1.0 - s, b - 1.0) * tail(1.0 - s)
        },
        cfg,
    )?;
    let right_scale = cp(0.5, cb) / beta2;
    let value = left.value * left_scale + right.value * right_scale;
    Ok(QuadResult {
        value,
        error: left.error * left_scale.norm() + right.error * right_scale.norm(),
        evaluations: left.evaluations + right.evaluations,
    })
}

/// `x^p` for `x > 0`.
pub(crate) fn rpow(x: f64, p: Complex64) -> Complex64 {
    (p * x.ln()).exp()
}

/// Gauss's `₂F₁(a, b; c; z)` for real `z ∈ (−1, 1)` and `Re c > Re b > 0`, through
/// `Γ(c)/(Γ(b)Γ(c − b)) ∫₀¹ t^{b−1}(1 − t)^{c−b−1}(1 − tz)^{−a} dt`.
///
/// ```
/// use shintani::specfun::hyp2f1;
/// use shintani::Complex64;
/// let one = Complex64::new(1.0, 0.0);
/// let v = hyp2f1(one, one, Complex64::new(2.0, 0.0), 0.5).unwrap();
/// assert!((v.re - 2.0 * 2f64.ln()).abs() < 1e-12);
/// ```
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    hyp2f1_with(a, b, c, z, &QuadratureConfig { rel_tol: 1e-13, ..Default::default() })
}

pub fn hyp2f1_with(a: Complex64, b: Complex64, c: Complex64, z: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    if !(z > -1.0 && z < 1.0) {
        return Err(Error::InvalidInput(format!("hyp2f1 needs z in (−1, 1), got {z}")));
    }
    if !(c.re > b.re && b.re > 0.0) {
        return Err(Error::InvalidInput(format!("hyp2f1 needs Re c > Re b > 0, got b={b}, c={c}")));
    }
    if z == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let integral = euler_integral(a, b, c, z, cfg)?;
    let lg = log_gamma(c)? - log_gamma(b)? - log_gamma(c - b)?;
    Ok(integral.value * lg.exp())
}
