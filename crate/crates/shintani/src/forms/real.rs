use std::f64::consts::PI;

use crate::{Error, Result};

/// A real 2×2 matrix `[[p, q], [r, s]]`.
pub type Mat2 = [[f64; 2]; 2];

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

pub fn mat_det(x: &Mat2) -> f64 {
    x[0][0] * x[1][1] - x[0][1] * x[1][0]
}

pub fn mat_inv(x: &Mat2) -> Mat2 {
    let d = mat_det(x);
    [[x[1][1] / d, -x[0][1] / d], [-x[1][0] / d, x[0][0] / d]]
}

/// A real binary cubic form, an element of `V_ℝ`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct RealCubicForm(pub [f64; 4]);

impl RealCubicForm {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        RealCubicForm([a, b, c, d])
    }

    /// `Disc(f)`, evaluated in double-double so that the cancellation between
    /// terms of size `‖f‖⁴` does not cost digits.
    pub fn discriminant(&self) -> f64 {
        let [a, b, c, d] = self.0;
        let terms = [
            dd_prod(&[b, b, c, c], 1.0),
            dd_prod(&[a, c, c, c], -4.0),
            dd_prod(&[b, b, b, d], -4.0),
            dd_prod(&[a, a, d, d], -27.0),
            dd_prod(&[a, b, c, d], 18.0),
        ];
        let (mut hi, mut lo) = (0.0, 0.0);
        for (th, tl) in terms {
            let (s, e) = two_sum(hi, th);
            hi = s;
            lo += e + tl;
        }
        hi + lo
    }

    /// `(γ·f)(x, y) = f((x, y)γ) / |det γ|`.
    pub fn act(&self, g: &Mat2) -> RealCubicForm {
        let [a, b, c, d] = self.0;
        let [[p, q], [r, s]] = *g;
        let na = a * p * p * p + b * p * p * q + c * p * q * q + d * q * q * q;
        let nd = a * r * r * r + b * r * r * s + c * r * s * s + d * s * s * s;
        let nb = 3.0 * a * p * p * r
            + b * (p * p * s + 2.0 * p * q * r)
            + c * (q * q * r + 2.0 * p * q * s)
            + 3.0 * d * q * q * s;
        let nc = 3.0 * a * p * r * r
            + b * (r * r * q + 2.0 * p * r * s)
            + c * (s * s * p + 2.0 * q * r * s)
            + 3.0 * d * q * s * s;
        let k = 1.0 / mat_det(g).abs();
        RealCubicForm([na * k, nb * k, nc * k, nd * k])
    }

    pub fn scale(&self, k: f64) -> RealCubicForm {
        RealCubicForm(self.0.map(|x| x * k))
    }

    pub fn add(&self, o: &RealCubicForm) -> RealCubicForm {
        RealCubicForm([0, 1, 2, 3].map(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &RealCubicForm) -> RealCubicForm {
        RealCubicForm([0, 1, 2, 3].map(|i| self.0[i] - o.0[i]))
    }

    /// The sup norm `‖f‖∞` used for the balls `B_R(f)`.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Evaluate `f(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let [a, b, c, d] = self.0;
        ((a * x + b * y) * x + c * y * y) * x + d * y * y * y
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

// k·x₁x₂⋯ as an unevaluated sum hi + lo; k is an exact small integer
fn dd_prod(xs: &[f64], k: f64) -> (f64, f64) {
    let (mut hi, mut lo) = (k, 0.0);
    for &x in xs {
        let p = hi * x;
        let e = hi.mul_add(x, -p);
        hi = p;
        lo = lo * x + e;
    }
    (hi, lo)
}

/// `⟨f, g⟩ = f₁g₄ − f₂g₃/3 + f₃g₂/3 − f₄g₁`.
pub fn pairing(f: &RealCubicForm, g: &RealCubicForm) -> f64 {
    let [f1, f2, f3, f4] = f.0;
    let [g1, g2, g3, g4] = g.0;
    // grouped so that ⟨f, f⟩ = 0 holds exactly in floating point
    (f1 * g4 - f4 * g1) + (f3 * g2 - f2 * g3) / 3.0
}

/// An element `n_u a_t k_θ d_λ` of `G⁺ = ℝ_{>0} × SL₂(ℝ)` in Iwasawa form.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct IwasawaElement {
    pub u: f64,
    pub t: f64,
    pub theta: f64,
    pub lambda: f64,
}

impl IwasawaElement {
    pub fn new(u: f64, t: f64, theta: f64, lambda: f64) -> Result<Self> {
        if !(t > 0.0) || !(lambda > 0.0) {
            return Err(Error::InvalidInput(format!(
                "Iwasawa coordinates need t > 0 and λ > 0, got t = {t}, λ = {lambda}"
            )));
        }
        Ok(IwasawaElement { u, t, theta, lambda })
    }

    /// The involution `ι`, sending `n_u a_t k_θ d_λ` to `n_u a_t k_θ d_{1/λ}`.
    pub fn iota(&self) -> IwasawaElement {
        IwasawaElement { lambda: 1.0 / self.lambda, ..*self }
    }

    /// The matrix `n_u a_t k_θ · λ` acting on forms; `d_λ` is the scalar `λ`.
    pub fn matrix(&self) -> Mat2 {
        let m = mat_mul(&mat_mul(&n_u(self.u), &a_t(self.t)), &k_theta(self.theta));
        [[m[0][0] * self.lambda, m[0][1] * self.lambda], [m[1][0] * self.lambda, m[1][1] * self.lambda]]
    }
}

/// `n_u = [[1, 0], [u, 1]]`.
pub fn n_u(u: f64) -> Mat2 {
    [[1.0, 0.0], [u, 1.0]]
}

/// `a_t = diag(1/t, t)`.
pub fn a_t(t: f64) -> Mat2 {
    [[1.0 / t, 0.0], [0.0, t]]
}

/// `k_θ = [[cos 2πθ, sin 2πθ], [−sin 2πθ, cos 2πθ]]`.
pub fn k_theta(theta: f64) -> Mat2 {
    let (s, c) = (2.0 * PI * theta).sin_cos();
    [[c, s], [-s, c]]
}

/// `ι(g) = J g^{-T} J^{-1}` for an arbitrary invertible `g`; on `SL₂(ℝ)` this is
/// the identity and on scalars it inverts.
pub fn iota_matrix(g: &Mat2) -> Mat2 {
    let j: Mat2 = [[0.0, 1.0], [-1.0, 0.0]];
    let jinv: Mat2 = [[0.0, -1.0], [1.0, 0.0]];
    let gi = mat_inv(g);
    let git = [[gi[0][0], gi[1][0]], [gi[0][1], gi[1][1]]];
    mat_mul(&mat_mul(&j, &git), &jinv)
}
