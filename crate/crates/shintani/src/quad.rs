//! Numerical quadrature for complex-valued integrands.
//!
//! Double-exponential rules (tanh-sinh on finite intervals, exp-sinh on
//! half-lines, sinh-sinh on the line), adaptive Gauss–Kronrod (7/15), fixed
//! Gauss–Legendre nodes, and half-period summation with Wynn's ε-algorithm
//! for slowly decaying Fourier cosine integrals.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerances shared by the quadrature routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Target relative error, in `(1e-14, 1e-2)`.
    pub rel_tol: f64,
    /// Absolute floor below which an integral counts as converged regardless of size.
    pub abs_tol: f64,
    /// Step halvings for double-exponential rules, subdivisions for Gauss–Kronrod.
    pub max_levels: usize,
    /// Largest `|t|` in the double-exponential variable before the tails are cut.
    pub de_radius: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { rel_tol: 1e-12, abs_tol: 1e-300, max_levels: 12, de_radius: 6.5 }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        let cfg = QuadratureConfig { rel_tol, ..Default::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 1e-14 && self.rel_tol < 1e-2) {
            return Err(Error::InvalidInput(format!("rel_tol {} outside (1e-14, 1e-2)", self.rel_tol)));
        }
        if self.max_levels == 0 || !(self.de_radius > 0.0) {
            return Err(Error::InvalidInput("max_levels and de_radius must be positive".into()));
        }
        Ok(())
    }

    fn accept(&self, err: f64, value: Complex64) -> bool {
        err <= self.rel_tol * value.norm() || err <= self.abs_tol
    }
}

/// The outcome of a quadrature: value, error estimate and cost.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

fn no_convergence(rule: &str, r: &QuadResult) -> Error {
    Error::NoConvergence(format!(
        "{rule}: value {:e}, error estimate {:e} after {} evaluations",
        r.value, r.error, r.evaluations
    ))
}

// Shared driver: `term(x)` returns the weighted integrand at DE abscissa x,
// or None once the node has left representable range.
fn de_levels(cfg: &QuadratureConfig, rule: &str, mut term: impl FnMut(f64) -> Option<Complex64>) -> Result<QuadResult> {
    cfg.validate()?;
    let mut h = 1.0;
    let mut evals = 0usize;
    let mut sum = Complex64::new(0.0, 0.0);
    // level 0: all integer multiples of h
    let mut k = 0i64;
    if let Some(v) = term(0.0) {
        sum += v;
        evals += 1;
    }
    loop {
        k += 1;
        let x = k as f64 * h;
        if x > cfg.de_radius {
            break;
        }
        for xx in [x, -x] {
            if let Some(v) = term(xx) {
                sum += v;
                evals += 1;
            }
        }
    }
    let mut estimate = sum * h;
    let mut prev_diff = f64::INFINITY;
    for _ in 0..cfg.max_levels {
        h /= 2.0;
        let mut add = Complex64::new(0.0, 0.0);
        let mut j = 1i64;
        loop {
            let x = j as f64 * h;
            if x > cfg.de_radius {
                break;
            }
            for xx in [x, -x] {
                if let Some(v) = term(xx) {
                    add += v;
                    evals += 1;
                }
            }
            j += 2;
        }
        sum += add;
        let next = sum * h;
        let diff = (next - estimate).norm();
        estimate = next;
        // DE convergence is quadratic: once diff shrinks, the new error is about diff²/|I|
        let err = if diff < prev_diff && estimate.norm() > 0.0 { diff * (diff / estimate.norm()).min(1.0) } else { diff };
        prev_diff = diff;
        let res = QuadResult { value: estimate, error: err.max(diff * 1e-3), evaluations: evals };
        if cfg.accept(diff, estimate) {
            return Ok(res);
        }
        if h < 1e-6 {
            return Err(no_convergence(rule, &res));
        }
    }
    Err(no_convergence(rule, &QuadResult { value: estimate, error: prev_diff, evaluations: evals }))
}

/// `∫₀¹ f(t, 1 − t) dt` by tanh-sinh. The integrand receives both `t` and `1 − t`,
/// each computed without cancellation, so endpoint singularities can be evaluated accurately.
pub fn tanh_sinh_unit(f: impl Fn(f64, f64) -> Complex64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    de_levels(cfg, "tanh-sinh", |x| {
        let u = FRAC_PI_2 * x.sinh();
        // small = 1/(1 + e^{2|u|}) is the distance to the nearer endpoint
        let e = (-2.0 * u.abs()).exp();
        let small = e / (1.0 + e);
        if small == 0.0 {
            return None;
        }
        let (t, tc) = if u >= 0.0 { (1.0 - small, small) } else { (small, 1.0 - small) };
        // dt/dx = (π/2) cosh x / (2 cosh² u) = (π/2) cosh x · small · (1 − small) · 2
        let w = FRAC_PI_2 * x.cosh() * 2.0 * small * (1.0 - small);
        let v = f(t, tc) * w;
        if v.re.is_finite() && v.im.is_finite() { Some(v) } else { None }
    })
}

/// `∫_a^b f(x) dx` by tanh-sinh.
pub fn tanh_sinh(f: impl Fn(f64) -> Complex64, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    let len = b - a;
    let r = tanh_sinh_unit(|t, tc| if t <= 0.5 { f(a + len * t) } else { f(b - len * tc) }, cfg)?;
    Ok(QuadResult { value: r.value * len, error: r.error * len.abs(), ..r })
}

/// `∫_a^∞ f(x) dx` by exp-sinh; `f` should decay at least exponentially.
pub fn exp_sinh(f: impl Fn(f64) -> Complex64, a: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    de_levels(cfg, "exp-sinh", |x| {
        let e = (FRAC_PI_2 * x.sinh()).exp();
        if e == 0.0 || !e.is_finite() {
            return None;
        }
        let w = FRAC_PI_2 * x.cosh() * e;
        let v = f(a + e) * w;
        if v.re.is_finite() && v.im.is_finite() { Some(v) } else { None }
    })
}

/// `∫_{−∞}^{∞} f(x) dx` by sinh-sinh.
pub fn sinh_sinh(f: impl Fn(f64) -> Complex64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    de_levels(cfg, "sinh-sinh", |x| {
        let s = FRAC_PI_2 * x.sinh();
        let y = s.sinh();
        if !y.is_finite() {
            return None;
        }
        let w = FRAC_PI_2 * x.cosh() * s.cosh();
        let v = f(y) * w;
        if v.re.is_finite() && v.im.is_finite() { Some(v) } else { None }
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Adaptive Gauss–Kronrod (7/15) on `[a, b]` with a global error budget.
pub fn gauss_kronrod(f: impl Fn(f64) -> Complex64, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    cfg.validate()?;
    let max_intervals = 1usize << cfg.max_levels.min(16);
    let (v, e) = gk15(&f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    let mut evals = 15;
    loop {
        let total: Complex64 = intervals.iter().map(|x| x.2).sum();
        let err: f64 = intervals.iter().map(|x| x.3).sum();
        let res = QuadResult { value: total, error: err, evaluations: evals };
        if cfg.accept(err, total) {
            return Ok(res);
        }
        if intervals.len() >= max_intervals {
            return Err(no_convergence("Gauss-Kronrod", &res));
        }
        let (i, _) = intervals.iter().enumerate().max_by(|x, y| x.1 .3.total_cmp(&y.1 .3)).unwrap();
        let (lo, hi, _, _) = intervals.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        evals += 30;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}

/// `∫_a^b f` by the trapezoidal rule from step `h0`, halving the step until
/// two successive levels agree. Meant for integrands that are analytic and
/// negligible at both ends (or periodic over `[a, b]`), where the rule
/// converges geometrically and the last difference overstates the error.
pub fn trapezoid(f: impl Fn(f64) -> Complex64, a: f64, b: f64, h0: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if !(b > a) || !(h0 > 0.0) {
        return Err(Error::InvalidInput(format!("trapezoid needs a < b and h0 > 0, got [{a}, {b}], {h0}")));
    }
    let mut n = ((b - a) / h0).ceil().max(1.0) as usize;
    let mut h = (b - a) / n as f64;
    let mut sum = (f(a) + f(b)) * 0.5;
    for k in 1..n {
        sum += f(a + h * k as f64);
    }
    let mut evals = n + 1;
    let mut estimate = sum * h;
    for _ in 0..cfg.max_levels {
        for k in 0..n {
            sum += f(a + h * (k as f64 + 0.5));
        }
        evals += n;
        n *= 2;
        h /= 2.0;
        let next = sum * h;
        let diff = (next - estimate).norm();
        estimate = next;
        let res = QuadResult { value: estimate, error: diff, evaluations: evals };
        if cfg.accept(diff, estimate) {
            return Ok(res);
        }
    }
    Err(no_convergence("trapezoid", &QuadResult { value: estimate, error: f64::INFINITY, evaluations: evals }))
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Wynn's ε-algorithm applied to a sequence of partial sums; returns the last
/// two even-column extrapolants.
pub fn wynn_epsilon(s: &[Complex64]) -> (Complex64, Complex64) {
    let n = s.len();
    if n < 3 {
        let last = *s.last().unwrap_or(&Complex64::new(0.0, 0.0));
        return (last, last);
    }
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut cur: Vec<Complex64> = s.to_vec();
    let mut best = (s[n - 2], s[n - 1]);
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d.norm() == 0.0 {
                return best;
            }
            next.push(prev[i + 1] + d.inv());
        }
        prev = cur;
        cur = next;
        col += 1;
        if col % 2 == 0 && cur.len() >= 2 {
            best = (cur[cur.len() - 2], cur[cur.len() - 1]);
        }
    }
    best
}

/// `∫₀^∞ f(t) cos(ωt) dt` for smooth `f` decaying algebraically: Gauss–Legendre
/// on half-periods, partial sums accelerated by Wynn's ε-algorithm.
pub fn fourier_cos(f: impl Fn(f64) -> Complex64, omega: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if !(omega > 0.0) {
        return Err(Error::InvalidInput("fourier_cos needs ω > 0".into()));
    }
    let (gx, gw) = gauss_legendre(24);
    let half = PI / omega;
    let panel = |lo: f64, hi: f64| -> Complex64 {
        let c = 0.5 * (lo + hi);
        let r = 0.5 * (hi - lo);
        gx.iter().zip(&gw).map(|(x, w)| f(c + r * x) * (w * (omega * (c + r * x)).cos())).sum::<Complex64>() * r
    };
    // first node at the first zero of cos, then half-periods between zeros
    let first = 0.5 * half;
    let mut sums = Vec::new();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..8 {
        acc += panel(first * j as f64 / 8.0, first * (j + 1) as f64 / 8.0);
    }
    let mut evals = 8 * 24;
    let mut lo = first;
    let mut last = (Complex64::new(f64::NAN, 0.0), f64::INFINITY);
    for k in 0..400 {
        acc += panel(lo, lo + half);
        evals += 24;
        lo += half;
        sums.push(acc);
        if k >= 8 && k % 4 == 0 {
            let (a, b) = wynn_epsilon(&sums[sums.len().saturating_sub(40)..]);
            let err = (a - b).norm();
            let res = QuadResult { value: b, error: err, evaluations: evals };
            if cfg.accept(err, b) && (b - last.0).norm() <= 10.0 * err.max(cfg.rel_tol * b.norm()) {
                return Ok(res);
            }
            last = (b, err);
        }
    }
    Err(no_convergence("fourier-cos", &QuadResult { value: last.0, error: last.1, evaluations: evals }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn rules_on_known_integrals() {
        let cfg = QuadratureConfig::default();
        let r = tanh_sinh(|x| c(1.0 / x.sqrt()), 0.0, 1.0, &cfg).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12);
        let r = exp_sinh(|x| c((-x).exp()), 0.0, &cfg).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        let r = sinh_sinh(|x| c((-x * x).exp()), &cfg).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-12);
        let r = gauss_kronrod(|x| c(x.sin()), 0.0, PI, &cfg).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12);
        let r = fourier_cos(|t| c(1.0 / (1.0 + t * t)), 1.0, &cfg).unwrap();
        assert!((r.value.re - FRAC_PI_2 * (-1f64).exp()).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }
}
