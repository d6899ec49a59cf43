use std::f64::consts::PI;

use num_complex::Complex64;

use super::{log_gamma_factor, Variant, CONDUCTOR};
use crate::quad::{gauss_kronrod, QuadResult, QuadratureConfig};
use crate::{Error, Result};

/// The contour `Re u = 3` of the weight integral.
pub const DEFAULT_CONTOUR: f64 = 3.0;

/// Lines `Re u = c` that [`weight_v`] and the critical-line sums choose from.
pub const CONTOURS: [f64; 8] = [0.5, 1.0, 2.0, 3.0, 6.0, 10.0, 16.0, 24.0];

/// The smoothing function `G` in the weight integral. Both choices are even,
/// real on the real axis and equal to 1 at the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    /// `G(u) = cos(πu/(4A))^{−16A}`, holomorphic for `|Re u| < 2A`.
    CosPower(f64),
    /// `G(u) = e^{u²}`.
    Gaussian,
}

impl Default for Weight {
    fn default() -> Self {
        Weight::CosPower(24.0)
    }
}

impl Weight {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Weight::CosPower(a) if !(a >= 2.0) || !a.is_finite() => {
                Err(Error::InvalidInput(format!("cospower weight needs A ≥ 2, got {a}")))
            }
            _ => Ok(()),
        }
    }

    pub fn log_eval(&self, u: Complex64) -> Complex64 {
        match *self {
            Weight::CosPower(a) => -16.0 * a * (u * (PI / (4.0 * a))).cos().ln(),
            Weight::Gaussian => u * u,
        }
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.log_eval(u).exp()
    }

    /// Supremum of admissible contour abscissae.
    pub fn max_contour(&self) -> f64 {
        match *self {
            Weight::CosPower(a) => 2.0 * a,
            Weight::Gaussian => f64::INFINITY,
        }
    }

    /// `cospower(A)` or `gaussian`.
    pub fn tag(&self) -> String {
        match *self {
            Weight::CosPower(a) => format!("cospower({a})"),
            Weight::Gaussian => "gaussian".to_string(),
        }
    }
}

impl std::str::FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "gaussian" {
            return Ok(Weight::Gaussian);
        }
        let a = s
            .strip_prefix("cospower(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("cospower:"))
            .and_then(|r| r.parse::<f64>().ok())
            .ok_or_else(|| Error::InvalidInput(format!("unknown weight {s:?}, expected cospower(A) or gaussian")))?;
        let w = Weight::CosPower(a);
        w.validate()?;
        Ok(w)
    }
}

struct Integrand {
    s: Complex64,
    variant: Variant,
    weight: Weight,
    contour: f64,
    lg_s: Complex64,
}

impl Integrand {
    fn new(s: Complex64, variant: Variant, weight: Weight, contour: f64) -> Result<Self> {
        weight.validate()?;
        if !(contour > 0.0 && contour < weight.max_contour()) {
            return Err(Error::InvalidInput(format!(
                "contour Re u = {contour} must lie in (0, {}) for {}",
                weight.max_contour(),
                weight.tag()
            )));
        }
        Ok(Integrand { s, variant, weight, contour, lg_s: log_gamma_factor(s, variant)? })
    }

    // G(u) q^{u/2} γ(s+u)/γ(s) / u at u = c + iv
    fn h(&self, v: f64) -> Complex64 {
        let u = Complex64::new(self.contour, v);
        match log_gamma_factor(self.s + u, self.variant) {
            Ok(lg) => (self.weight.log_eval(u) + u * (0.5 * CONDUCTOR.ln()) + lg - self.lg_s).exp() / u,
            Err(_) => Complex64::new(f64::NAN, 0.0),
        }
    }

    // y^{−c}·(1/2π)∫|h| on a coarse grid
    fn abs_integral(&self, y: f64) -> Result<f64> {
        let (lo, hi) = self.support(0.25, 1e-16)?;
        let n = ((hi - lo) / 0.25).round() as usize;
        let m: f64 = (0..=n).map(|k| self.h(lo + 0.25 * k as f64).norm()).sum::<f64>() * 0.25 / (2.0 * PI);
        Ok(m * y.powf(-self.contour))
    }

    // scan outward from v = 0 in steps of `step` until the integrand has
    // stayed below `floor`·peak for a while
    fn support(&self, step: f64, floor: f64) -> Result<(f64, f64)> {
        let mut peak = self.h(0.0).norm();
        let mut ends = [0.0; 2];
        for (i, dir) in [-1.0, 1.0].into_iter().enumerate() {
            let mut quiet = 0;
            let mut k = 1.0;
            loop {
                let v = dir * k * step;
                let m = self.h(v).norm();
                if !m.is_finite() {
                    return Err(Error::NoConvergence(format!("weight integrand not finite at v = {v}")));
                }
                peak = peak.max(m);
                quiet = if m < floor * peak { quiet + 1 } else { 0 };
                if quiet >= 8 {
                    ends[i] = v;
                    break;
                }
                k += 1.0;
                if k * step > 2000.0 {
                    return Err(Error::NoConvergence("weight integrand does not decay along the contour".into()));
                }
            }
        }
        Ok((ends[0], ends[1]))
    }
}

/// `V_s(y)`, on whichever line of [`CONTOURS`] inside the weight's strip
/// carries the smallest `∫|integrand|`. No poles lie between these lines, so
/// the value does not depend on the choice; the smallest absolute integral
/// has the least cancellation. Near the transition `y ≈ √q τ²/(4π²)` this is
/// the line `Re u = 3`; [`weight_v_on`] evaluates on a given line.
///
/// ```
/// use shintani::afe::{weight_v, Variant, Weight};
/// use shintani::quad::QuadratureConfig;
/// use shintani::Complex64;
/// let s = Complex64::new(0.5, 40.0);
/// let v = weight_v(s, 0.16, Variant::Add, Weight::default(), &QuadratureConfig::default()).unwrap();
/// assert!((v - 1.0).norm() < 0.05);
/// ```
pub fn weight_v(s: Complex64, y: f64, variant: Variant, weight: Weight, cfg: &QuadratureConfig) -> Result<Complex64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::InvalidInput(format!("weight_v needs y > 0, got {y}")));
    }
    let mut best = (f64::INFINITY, DEFAULT_CONTOUR);
    for c in CONTOURS.into_iter().filter(|&c| c < weight.max_contour() - 0.5) {
        let m = Integrand::new(s, variant, weight, c)?.abs_integral(y)?;
        if m < best.0 {
            best = (m, c);
        }
    }
    Ok(weight_v_on(s, y, variant, weight, best.1, cfg)?.value)
}

/// `V_s(y)` by adaptive Gauss–Kronrod along `Re u = contour`. The error
/// target is relative to `∫|integrand|`, since for large `y` the value is far
/// smaller than the integrand.
pub fn weight_v_on(
    s: Complex64,
    y: f64,
    variant: Variant,
    weight: Weight,
    contour: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::InvalidInput(format!("weight_v needs y > 0, got {y}")));
    }
    cfg.validate()?;
    let ig = Integrand::new(s, variant, weight, contour)?;
    let scale = y.powf(-contour) / (2.0 * PI);
    let ly = y.ln();
    let f = |v: f64| ig.h(v) * Complex64::from_polar(scale, -v * ly);
    let (lo, hi) = ig.support(0.25, 1e-3 * cfg.rel_tol)?;
    let l1: f64 = (0..=((hi - lo) / 0.25).round() as usize).map(|k| f(lo + 0.25 * k as f64).norm() * 0.25).sum();
    let panels = ((hi - lo) / 2.0).ceil().max(1.0) as usize;
    let width = (hi - lo) / panels as f64;
    let pcfg = QuadratureConfig { abs_tol: cfg.rel_tol * l1 / panels as f64, ..*cfg };
    let mut out = QuadResult { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 };
    for k in 0..panels {
        let a = lo + width * k as f64;
        let r = gauss_kronrod(f, a, a + width, &pcfg)?;
        out.value += r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
    }
    Ok(out)
}

/// The weight integral discretised once on `Re u = contour` by the
/// trapezoidal rule, so that `V_s(y)` for many `y` costs one pass over the
/// nodes each. The integrand is analytic in a strip around the contour and
/// decays like `G`, so the rule converges geometrically in the node spacing.
#[derive(Clone, Debug)]
pub struct WeightKernel {
    contour: f64,
    v0: f64,
    step: f64,
    // h(v_j)·step/(2π)
    coef: Vec<Complex64>,
}

impl WeightKernel {
    pub fn new(s: Complex64, variant: Variant, weight: Weight, contour: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && step <= 0.5) {
            return Err(Error::InvalidInput(format!("kernel step must lie in (0, 0.5], got {step}")));
        }
        let ig = Integrand::new(s, variant, weight, contour)?;
        let (lo, hi) = ig.support(step, 1e-22)?;
        let n = ((hi - lo) / step).round() as usize + 1;
        let coef = (0..n).map(|j| ig.h(lo + step * j as f64) * (step / (2.0 * PI))).collect();
        Ok(WeightKernel { contour, v0: lo, step, coef })
    }

    pub fn contour(&self) -> f64 {
        self.contour
    }

    pub fn nodes(&self) -> usize {
        self.coef.len()
    }

    /// `(1/2π) ∫ |G(u) q^{u/2} γ(s+u)/γ(s) / u| dv`, so that `|V_s(y)| ≤ y^{−c}` times this.
    pub fn abs_moment(&self) -> f64 {
        self.coef.iter().map(|c| c.norm()).sum()
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        let ly = y.ln();
        let rot = Complex64::from_polar(1.0, -self.step * ly);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut ph = Complex64::new(0.0, 0.0);
        for (j, c) in self.coef.iter().enumerate() {
            // resynchronise the phase recurrence every 64 nodes
            if j % 64 == 0 {
                ph = Complex64::from_polar(1.0, -(self.v0 + self.step * j as f64) * ly);
            } else {
                ph *= rot;
            }
            acc += c * ph;
        }
        acc * y.powf(-self.contour)
    }
}
