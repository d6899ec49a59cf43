//! Jacobians of `(u, t, θ, λ) ↦ n_u a_t k_θ d_λ · v` by central differences.

use super::{invert4, HomogeneousCoords};
use crate::forms::RealCubicForm;
use crate::{Error, Result};

/// Scale envelope `λ^i t^j` of one Jacobian entry; `None` marks an entry that vanishes identically.
pub type Envelope = Option<(i32, i32)>;

/// Envelope of `∂(coefficient)/∂(variable)`, indexed `[variable][coefficient]`
/// with variables `(u, t, θ, λ)` and coefficients `(a, b, c, d)`.
pub const FORWARD_ENVELOPE: [[Envelope; 4]; 4] = [
    [None, Some((1, -3)), Some((1, -1)), Some((1, 1))],
    [Some((1, -4)), Some((1, -2)), Some((1, 0)), Some((1, 2))],
    [Some((1, -3)), Some((1, -1)), Some((1, 1)), Some((1, 3))],
    [Some((0, -3)), Some((0, -1)), Some((0, 1)), Some((0, 3))],
];

/// Envelope of `∂(variable)/∂(coefficient)`, indexed `[coefficient][variable]`.
pub const BACKWARD_ENVELOPE: [[Envelope; 4]; 4] = [
    [Some((-1, 5)), Some((-1, 4)), Some((-1, 3)), Some((0, 3))],
    [Some((-1, 3)), Some((-1, 2)), Some((-1, 1)), Some((0, 1))],
    [Some((-1, 1)), Some((-1, 0)), Some((-1, -1)), Some((0, -1))],
    [Some((-1, -1)), Some((-1, -2)), Some((-1, -3)), Some((0, -3))],
];

const REL_STEP: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct JacobianPair {
    /// `forward[i][j] = ∂(coefficient j)/∂(variable i)`.
    pub forward: [[f64; 4]; 4],
    /// `backward[j][i] = ∂(variable i)/∂(coefficient j)`.
    pub backward: [[f64; 4]; 4],
    /// `det ∂(a,b,c,d)/∂(u,t,θ,λ)`.
    pub determinant: f64,
    /// `|determinant| / (λ³/t³)`.
    pub measure_ratio: f64,
    /// Each forward entry divided by its envelope; `NaN` where the envelope is zero.
    pub forward_ratio: [[f64; 4]; 4],
    pub backward_ratio: [[f64; 4]; 4],
}

impl JacobianPair {
    /// Largest envelope ratio in absolute value, over both matrices.
    pub fn max_ratio(&self) -> f64 {
        self.forward_ratio
            .iter()
            .chain(self.backward_ratio.iter())
            .flatten()
            .filter(|x| x.is_finite())
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// `max |forward·backward − I|`.
    pub fn inverse_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for k in 0..4 {
                let s: f64 = (0..4).map(|j| self.forward[i][j] * self.backward[j][k]).sum();
                let e = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((s - e).abs());
            }
        }
        worst
    }
}

fn scale(env: Envelope, lambda: f64, t: f64) -> f64 {
    match env {
        Some((i, j)) => lambda.powi(i) * t.powi(j),
        None => f64::NAN,
    }
}

/// Jacobian pair at `h` for the base point of its orbit.
///
/// ```
/// use shintani::coords::{jacobian_pair, HomogeneousCoords, Orbit};
/// let h = HomogeneousCoords::new(0.1, 2.0, 0.05, 3.0, Orbit::Minus).unwrap();
/// let j = jacobian_pair(&h).unwrap();
/// assert!(j.inverse_defect() < 1e-5);
/// ```
pub fn jacobian_pair(h: &HomogeneousCoords) -> Result<JacobianPair> {
    jacobian_pair_with_base(h, &h.orbit.base_point())
}

/// Jacobian pair of `(u, t, θ, λ) ↦ n_u a_t k_θ d_λ · v` for an arbitrary `v`.
pub fn jacobian_pair_with_base(h: &HomogeneousCoords, v: &RealCubicForm) -> Result<JacobianPair> {
    let x = [h.u, h.t, h.theta, h.lambda];
    let eval = |x: [f64; 4]| {
        let g = HomogeneousCoords { u: x[0], t: x[1], theta: x[2], lambda: x[3], orbit: h.orbit };
        v.act(&g.sl2_matrix()).scale(x[3]).0
    };
    let mut forward = [[0.0; 4]; 4];
    for i in 0..4 {
        // small entries come out of cancellation between terms up to t⁷ larger,
        // so the step is large and one Richardson pass removes the h² error
        let step = REL_STEP * x[i].abs().max(1.0);
        if (i == 1 || i == 3) && x[i] - step <= 0.0 {
            return Err(Error::InvalidInput("difference step leaves t > 0, λ > 0".into()));
        }
        let central = |h: f64| {
            let (mut xp, mut xm) = (x, x);
            xp[i] += h;
            xm[i] -= h;
            let (fp, fm) = (eval(xp), eval(xm));
            std::array::from_fn::<f64, 4, _>(|j| (fp[j] - fm[j]) / (2.0 * h))
        };
        let (coarse, fine) = (central(step), central(step / 2.0));
        for j in 0..4 {
            forward[i][j] = (4.0 * fine[j] - coarse[j]) / 3.0;
        }
    }
    if forward.iter().flatten().any(|e| !e.is_finite()) {
        return Err(Error::Overflow("non-finite Jacobian entry".into()));
    }
    // backward = forward⁻¹ read in the transposed layout
    let backward = invert4(forward).ok_or_else(|| Error::Singular("forward Jacobian is singular".into()))?;
    let determinant = det4(&forward);
    let (lambda, t) = (h.lambda, h.t);
    let mut forward_ratio = [[0.0; 4]; 4];
    let mut backward_ratio = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            forward_ratio[i][j] = forward[i][j] / scale(FORWARD_ENVELOPE[i][j], lambda, t);
            backward_ratio[j][i] = backward[j][i] / scale(BACKWARD_ENVELOPE[j][i], lambda, t);
        }
    }
    Ok(JacobianPair {
        forward,
        backward,
        determinant,
        measure_ratio: determinant.abs() / (lambda / t).powi(3),
        forward_ratio,
        backward_ratio,
    })
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}
