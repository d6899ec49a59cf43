//! Reduction of `n_u a_t k_θ` into the standard fundamental domain
//! `|u| ≤ 1/2`, `u² + t⁴ ≥ 1`, read through the point `z = u + i t²`.

use super::{iwasawa_decompose, wrap, HomogeneousCoords};
use crate::forms::{mat_mul, IntMatrix};

/// `3^{1/4}/√2`, the lowest height in the fundamental domain.
pub const T_MIN: f64 = 0.930_604_859_102_099_4;

const MAX_STEPS: usize = 500;

/// `(u, t²)`, the upper-half-plane point attached to the coordinates.
pub fn upper_half_plane_point(h: &HomogeneousCoords) -> (f64, f64) {
    (h.u, h.t * h.t)
}

pub fn in_fundamental_domain(u: f64, t: f64, tol: f64) -> bool {
    u.abs() <= 0.5 + tol && u * u + t.powi(4) >= 1.0 - tol
}

/// Find `γ ∈ SL₂(ℤ)` with `γ·n_u a_t k_θ` in the fundamental domain.
///
/// Returns the coordinates of `γ·g` (with `λ` carried over unchanged and `θ`
/// reduced into the orbit range) together with `γ`.
///
/// ```
/// use shintani::coords::{fundamental_domain_reduce, HomogeneousCoords, Orbit};
/// let h = HomogeneousCoords::new(1.3, 0.2, 0.1, 1.0, Orbit::Minus).unwrap();
/// let (r, _) = fundamental_domain_reduce(&h);
/// assert!(r.u.abs() <= 0.5 && r.u * r.u + r.t.powi(4) >= 1.0 - 1e-12);
/// ```
pub fn fundamental_domain_reduce(h: &HomogeneousCoords) -> (HomogeneousCoords, IntMatrix) {
    let g = h.sl2_matrix();
    let mut gamma = IntMatrix::IDENTITY;
    let (mut u, mut t, mut theta) = (h.u, h.t, h.theta);
    for _ in 0..MAX_STEPS {
        let k = u.round();
        if k != 0.0 {
            let step = IntMatrix::unipotent(-(k as i64));
            gamma = step.mul(&gamma).expect("translation overflow");
        }
        // recompute from the accumulated matrix to keep rounding from drifting
        let m = mat_mul(&gamma.to_f64(), &g);
        let (nu, nt, nth, _) = iwasawa_decompose(&m).expect("SL2 matrix");
        u = nu;
        t = nt;
        theta = nth;
        if u * u + t.powi(4) < 1.0 - 1e-14 {
            gamma = IntMatrix::S.mul(&gamma).expect("inversion overflow");
            let m = mat_mul(&gamma.to_f64(), &g);
            let (nu, nt, nth, _) = iwasawa_decompose(&m).expect("SL2 matrix");
            u = nu;
            t = nt;
            theta = nth;
        } else if u.abs() <= 0.5 {
            break;
        }
    }
    let out = HomogeneousCoords { u, t, theta: wrap(theta, h.orbit.theta_period()), lambda: h.lambda, orbit: h.orbit };
    (out, gamma)
}
