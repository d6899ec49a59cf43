//! Homogeneous coordinates `(u, t, θ, λ)` on the open orbits `V_±`.
//!
//! Every nonsingular real form is `n_u a_t k_θ d_λ · f_±` for unique
//! `u ∈ ℝ`, `t, λ > 0` and `θ ∈ [0, 1/3)` (plus) or `θ ∈ [0, 1)` (minus), with
//! base points `f₊ = (0, 3, 0, −1)/108^{1/4}` and `f₋ = (0, 1, 0, 1)/√2`.

mod domain;
mod jacobian;
mod lemmas;
mod logdisc;

pub use domain::{fundamental_domain_reduce, in_fundamental_domain, upper_half_plane_point, T_MIN};
pub use jacobian::{jacobian_pair, jacobian_pair_with_base, Envelope, JacobianPair, BACKWARD_ENVELOPE, FORWARD_ENVELOPE};
pub use lemmas::{
    calibrate_c2, derivative_floor, log_t_spread, sample_ball_b, t_stability_sweep, DerivativeFloorReport, SpreadReport,
    StabilityReport,
};
pub use logdisc::{disc_partial, log_disc_partial};

use std::f64::consts::PI;

use crate::forms::{a_t, hessian, k_theta, mat_mul, n_u, quadratic_factor, Mat2, RealCubicForm};
use crate::{Error, Result};

/// Which open orbit a form lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orbit {
    /// `Disc > 0`, base point `f₊`.
    Plus,
    /// `Disc < 0`, base point `f₋`.
    Minus,
}

impl Orbit {
    pub fn base_point(self) -> RealCubicForm {
        match self {
            Orbit::Plus => RealCubicForm([0.0, 3.0, 0.0, -1.0]).scale(108f64.powf(-0.25)),
            Orbit::Minus => RealCubicForm([0.0, 1.0, 0.0, 1.0]).scale(std::f64::consts::FRAC_1_SQRT_2),
        }
    }

    /// Period of `θ`: the stabiliser of `f₊` contains rotation by `2π/3`.
    pub fn theta_period(self) -> f64 {
        match self {
            Orbit::Plus => 1.0 / 3.0,
            Orbit::Minus => 1.0,
        }
    }

    pub fn disc_sign(self) -> f64 {
        match self {
            Orbit::Plus => 1.0,
            Orbit::Minus => -1.0,
        }
    }
}

/// The coordinates of `n_u a_t k_θ d_λ · f_±`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomogeneousCoords {
    pub u: f64,
    pub t: f64,
    pub theta: f64,
    pub lambda: f64,
    pub orbit: Orbit,
}

impl HomogeneousCoords {
    pub fn new(u: f64, t: f64, theta: f64, lambda: f64, orbit: Orbit) -> Result<Self> {
        if !(t > 0.0 && lambda > 0.0) || !u.is_finite() || !theta.is_finite() || !t.is_finite() || !lambda.is_finite()
        {
            return Err(Error::InvalidInput(format!("bad coordinates u={u} t={t} θ={theta} λ={lambda}")));
        }
        Ok(HomogeneousCoords { u, t, theta, lambda, orbit })
    }

    /// Same point with `θ` reduced into `[0, period)`.
    pub fn canonical(&self) -> Self {
        HomogeneousCoords { theta: wrap(self.theta, self.orbit.theta_period()), ..*self }
    }

    /// The `SL₂(ℝ)` part `n_u a_t k_θ`.
    pub fn sl2_matrix(&self) -> Mat2 {
        mat_mul(&mat_mul(&n_u(self.u), &a_t(self.t)), &k_theta(self.theta))
    }
}

pub(crate) fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period { 0.0 } else { r }
}

/// `n_u a_t k_θ d_λ · f_±`, composed from the group actions.
///
/// ```
/// use shintani::coords::{form_from_coords, HomogeneousCoords, Orbit};
/// let h = HomogeneousCoords::new(0.0, 1.0, 0.0, 2f64.sqrt(), Orbit::Minus).unwrap();
/// let f = form_from_coords(&h);
/// assert!((f.0[1] - 1.0).abs() < 1e-15 && (f.0[3] - 1.0).abs() < 1e-15);
/// ```
pub fn form_from_coords(h: &HomogeneousCoords) -> RealCubicForm {
    h.orbit.base_point().act(&h.sl2_matrix()).scale(h.lambda)
}

/// Split a real matrix of positive determinant as `n_u a_t k_θ · λ`, returning `(u, t, θ, λ)`
/// with `θ ∈ [0, 1)`.
pub fn iwasawa_decompose(m: &Mat2) -> Result<(f64, f64, f64, f64)> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if !(det > 0.0) {
        return Err(Error::InvalidInput("Iwasawa decomposition needs det > 0".into()));
    }
    let lambda = det.sqrt();
    let g = [[m[0][0] / lambda, m[0][1] / lambda], [m[1][0] / lambda, m[1][1] / lambda]];
    let r = g[0][0].hypot(g[0][1]);
    let t = 1.0 / r;
    let phi = g[0][1].atan2(g[0][0]);
    let (s, c) = phi.sin_cos();
    let u = t * (g[1][0] * c + g[1][1] * s);
    Ok((u, t, wrap(phi / (2.0 * PI), 1.0), lambda))
}

/// Smallest `|Disc|` accepted by [`coords_from_form`].
pub const SINGULAR_FLOOR: f64 = 1e-12;

/// Invert [`form_from_coords`].
///
/// `λ = |Disc|^{1/4}`; `(u, t)` come from the definite quadratic covariant
/// (Hessian for `Disc > 0`, quadratic factor for `Disc < 0`), whose
/// normalisation is `(x + uy)²/t² + t²y²`; `θ` is read off
/// `(n_u a_t)^{-1}·f/λ = k_θ·f_±`. A Newton step on the forward map polishes
/// the result when the roundtrip residual is not already at rounding level.
pub fn coords_from_form(f: &RealCubicForm) -> Result<HomogeneousCoords> {
    if !f.is_finite() {
        return Err(Error::InvalidInput("non-finite coefficients".into()));
    }
    let disc = f.discriminant();
    let scale = f.norm_inf();
    if disc.abs() < SINGULAR_FLOOR {
        return Err(Error::Singular(format!("|Disc| = {:e} below floor", disc.abs())));
    }
    let orbit = if disc > 0.0 { Orbit::Plus } else { Orbit::Minus };
    let lambda = disc.abs().powf(0.25);
    let point = |g: &RealCubicForm| match orbit {
        Orbit::Plus => hessian(g).point(),
        Orbit::Minus => quadratic_factor(g).point(),
    };
    let (mut u, mut t) = point(f);
    let mut pulled = *f;
    // The covariant of a form with large coefficients loses digits to
    // cancellation; pulling back by the current estimate gives a form of size
    // about λ whose covariant point is a small, accurate correction.
    for _ in 0..4 {
        if !(u.is_finite() && t.is_finite() && t > 0.0) {
            return Err(Error::NoConvergence("covariant point is not finite".into()));
        }
        pulled = f.scale(1.0 / lambda).act(&n_u(-u)).act(&a_t(1.0 / t));
        let (du, dt) = point(&pulled);
        if !(du.is_finite() && dt.is_finite() && dt > 0.0) {
            return Err(Error::NoConvergence("covariant point is not finite".into()));
        }
        if du.abs() < 1e-15 && (dt - 1.0).abs() < 1e-15 {
            break;
        }
        u += t * t * du;
        t *= dt;
    }
    let h = h_unrotate(&pulled, orbit);
    let mut coords = HomogeneousCoords { u, t, theta: h, lambda, orbit };
    let tol = 1e-13 * scale;
    let mut res = residual(&coords, f);
    let mut iter = 0;
    while res > tol && iter < 8 {
        let next = newton_step(&coords, f)?;
        let r = residual(&next, f);
        if r >= res {
            break;
        }
        coords = next;
        res = r;
        iter += 1;
    }
    if res > 1e-9 * scale {
        return Err(Error::NoConvergence(format!("coordinate inversion residual {res:e}")));
    }
    Ok(coords.canonical())
}

// θ from k_θ·f₋ = (s, c, s, c)/√2 or k_θ·f₊ = (s₃, 3c₃, −3s₃, −c₃)/108^{1/4}.
fn h_unrotate(h: &RealCubicForm, orbit: Orbit) -> f64 {
    let [a, b, c, d] = h.0;
    match orbit {
        Orbit::Minus => wrap((a + c).atan2(b + d) / (2.0 * PI), 1.0),
        Orbit::Plus => wrap((3.0 * a - c).atan2(b - 3.0 * d) / (6.0 * PI), 1.0 / 3.0),
    }
}

fn residual(h: &HomogeneousCoords, f: &RealCubicForm) -> f64 {
    form_from_coords(h).sub(f).norm_inf()
}

fn newton_step(h: &HomogeneousCoords, f: &RealCubicForm) -> Result<HomogeneousCoords> {
    let x = [h.u, h.t, h.theta, h.lambda];
    let eval = |x: [f64; 4]| form_from_coords(&HomogeneousCoords { u: x[0], t: x[1], theta: x[2], lambda: x[3], orbit: h.orbit }).0;
    let mut j = [[0.0; 4]; 4];
    for k in 0..4 {
        let step = 1e-7 * x[k].abs().max(1e-3);
        let mut xp = x;
        let mut xm = x;
        xp[k] += step;
        xm[k] -= step;
        let (fp, fm) = (eval(xp), eval(xm));
        for i in 0..4 {
            j[i][k] = (fp[i] - fm[i]) / (2.0 * step);
        }
    }
    let r = eval(x);
    let rhs = [0, 1, 2, 3].map(|i| f.0[i] - r[i]);
    let dx = solve4(j, rhs).ok_or_else(|| Error::NoConvergence("singular Jacobian in Newton step".into()))?;
    Ok(HomogeneousCoords {
        u: x[0] + dx[0],
        t: (x[1] + dx[1]).max(x[1] * 0.5),
        theta: x[2] + dx[2],
        lambda: (x[3] + dx[3]).max(x[3] * 0.5),
        orbit: h.orbit,
    })
}

/// Gaussian elimination with partial pivoting on a 4×4 system.
pub(crate) fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let m = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= m * a[col][k];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Inverse of a 4×4 matrix, or `None` if singular.
pub(crate) fn invert4(a: [[f64; 4]; 4]) -> Option<[[f64; 4]; 4]> {
    let mut out = [[0.0; 4]; 4];
    for k in 0..4 {
        let mut e = [0.0; 4];
        e[k] = 1.0;
        let col = solve4(a, e)?;
        for i in 0..4 {
            out[i][k] = col[i];
        }
    }
    Some(out)
}
