//! The definite quadratic covariant of a nonsingular cubic form.
//!
//! For `Disc > 0` this is the Hessian; for `Disc < 0` it is the quadratic
//! factor complementary to the unique real linear factor. Either way the
//! covariant of `g·f` is `g` applied to the covariant of `f`, and the root
//! of its normalisation in the upper half plane is the point `−u + i t²` of
//! the Iwasawa coordinates of `f`.

use num_complex::Complex64;
use super::real::RealCubicForm;

/// A positive definite binary quadratic form `Ax² + Bxy + Cy²` with `A > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadratic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Quadratic {
    /// `(u, t)` such that the form is proportional to `(x + uy)²/t² + t²y²`.
    pub fn point(&self) -> (f64, f64) {
        let det = self.a * self.c - 0.25 * self.b * self.b;
        let u = self.b / (2.0 * self.a);
        let a_norm = self.a / det.sqrt();
        (u, 1.0 / a_norm.sqrt())
    }
}

/// The Hessian `(b² − 3ac, bc − 9ad, c² − 3bd)`, definite when `Disc > 0`.
pub fn hessian(f: &RealCubicForm) -> Quadratic {
    let [a, b, c, d] = f.0;
    Quadratic { a: b * b - 3.0 * a * c, b: b * c - 9.0 * a * d, c: c * c - 3.0 * b * d }
}

/// The unique real root of `a z³ + b z² + c z + d` for a cubic with negative
/// discriminant and `a ≠ 0`.
pub fn real_root(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let (b, c, d) = (b / a, c / a, d / a);
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = q * q / 4.0 + p * p * p / 27.0;
    let w = if disc >= 0.0 {
        let sq = disc.sqrt();
        // avoid cancellation: take the larger-magnitude cube root first
        let m = if q >= 0.0 { -q / 2.0 - sq } else { -q / 2.0 + sq };
        let r1 = m.cbrt();
        if r1 != 0.0 { r1 - p / (3.0 * r1) } else { 0.0 }
    } else {
        // three real roots in floating point; the caller only reaches this
        // through rounding, any root is then a fine Newton start
        2.0 * (-p / 3.0).sqrt() * ((3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0).acos() / 3.0).cos()
    };
    let mut z = w - b / 3.0;
    let h = |z: f64| ((z + b) * z + c) * z + d;
    let dh = |z: f64| (3.0 * z + 2.0 * b) * z + c;
    for _ in 0..6 {
        let fz = h(z);
        let dz = dh(z);
        if dz == 0.0 || fz == 0.0 {
            break;
        }
        let step = fz / dz;
        let zn = z - step;
        if !zn.is_finite() {
            break;
        }
        if step.abs() <= 1e-17 * z.abs().max(1e-300) {
            z = zn;
            break;
        }
        z = zn;
    }
    z
}

/// The quadratic factor `q` with `f = L·q`, `L` real linear, normalised to `A > 0`.
/// Meaningful only for `Disc(f) < 0`, where `q` is definite.
///
/// Deflating the real root leaves `4Aγ − β²` to cancellation when `|Disc f|`
/// is small against the coefficients, so the complex root read off the
/// deflated factor is polished by Newton's method on `f` itself before `q`
/// is rebuilt from it.
pub fn quadratic_factor(f: &RealCubicForm) -> Quadratic {
    let [a, b, c, d] = f.0;
    let q = if a.abs() >= d.abs() {
        // f(x, y) = (x − z₀y)(a x² + β xy + γ y²)
        let z0 = real_root(a, b, c, d);
        let beta = b + z0 * a;
        let gamma = c + z0 * beta;
        let z = polish_complex_root([a, b, c, d], a, beta, gamma);
        Quadratic { a, b: -2.0 * a * z.re, c: a * z.norm_sqr() }
    } else {
        // f(x, y) = (y − w₀x)(d y² + β xy + γ x²)
        let w0 = real_root(d, c, b, a);
        let beta = c + w0 * d;
        let gamma = b + w0 * beta;
        let w = polish_complex_root([d, c, b, a], d, beta, gamma);
        Quadratic { a: d * w.norm_sqr(), b: -2.0 * d * w.re, c: d }
    };
    if q.a < 0.0 {
        Quadratic { a: -q.a, b: -q.b, c: -q.c }
    } else {
        q
    }
}

// complex root of p₀z³ + p₁z² + p₂z + p₃ started from the root of a z² + β z + γ
fn polish_complex_root(p: [f64; 4], a: f64, beta: f64, gamma: f64) -> Complex64 {
    let disc = 4.0 * a * gamma - beta * beta;
    let mut z = Complex64::new(-beta / (2.0 * a), disc.max(0.0).sqrt() / (2.0 * a).abs());
    if disc <= 0.0 {
        return z;
    }
    for _ in 0..4 {
        let v = ((z * p[0] + p[1]) * z + p[2]) * z + p[3];
        let dv = (z * (3.0 * p[0]) + 2.0 * p[1]) * z + p[2];
        if dv.norm() == 0.0 {
            break;
        }
        let next = z - v / dv;
        if !(next.re.is_finite() && next.im.is_finite()) || next.im <= 0.0 {
            break;
        }
        let done = (next - z).norm() <= 4.0 * f64::EPSILON * next.norm();
        z = next;
        if done {
            break;
        }
    }
    z
}

/// The definite covariant for either sign of the discriminant.
pub fn definite_covariant(f: &RealCubicForm) -> Quadratic {
    if f.discriminant() > 0.0 {
        hessian(f)
    } else {
        quadratic_factor(f)
    }
}
