//! The Shintani zeta functions on the critical line.
//!
//! With `γ^add(s) = π^{−2s} Γ(s/2) Γ((s+1)/2) Γ((s+1/6)/2) Γ((s−1/6)/2)`,
//! `γ^sub` the same with shifts `(0, 1, 5/6, 7/6)` and conductor `q = 432`,
//! the completed functions `Λ(s) = q^{s/2} γ(s) ξ(s)` satisfy `Λ(s) = Λ(1 − s)`.
//! [`xi_critical`] evaluates `ξ(1/2 + iτ)` by the approximate functional
//! equation
//!
//! `ξ(s) = Σ a(n) n^{−s} V_s(n) + ε(s) Σ a(n) n^{s−1} V_{1−s}(n) + R(s)`,
//!
//! where `V_s(y) = (1/2πi) ∫ y^{−u} G(u) q^{u/2} γ(s+u)/γ(s) du/u` and
//! `ε(s) = q^{1/2−s} γ(1−s)/γ(s)`.

mod weight;
mod xi;

pub use weight::{weight_v, weight_v_on, Weight, WeightKernel, CONTOURS, DEFAULT_CONTOUR};
pub use xi::{
    linear_growth_constant, scan_csv_header, scan_csv_row, xi_critical, zeta_scan, CriticalEvaluation, XiConfig,
    TAIL_CONTOURS,
};

use num_complex::Complex64;

use crate::forms::CoefficientVariant;
use crate::specfun::log_gamma;
use crate::{Error, Result};

/// The conductor `q` shared by both variants.
pub const CONDUCTOR: f64 = 432.0;
/// The degree `d` of the gamma factor.
pub const DEGREE: usize = 4;

/// `ξ^add = √3 ξ⁺ + ξ⁻` or `ξ^sub = √3 ξ⁺ − ξ⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Add,
    Sub,
}

impl Variant {
    /// The shifts `κ_j` in `Γ((s + κ_j)/2)`.
    pub fn shifts(self) -> [f64; 4] {
        match self {
            Variant::Add => [0.0, 1.0, 1.0 / 6.0, -1.0 / 6.0],
            Variant::Sub => [0.0, 1.0, 5.0 / 6.0, 7.0 / 6.0],
        }
    }

    pub fn coefficients(self) -> CoefficientVariant {
        match self {
            Variant::Add => CoefficientVariant::Add,
            Variant::Sub => CoefficientVariant::Sub,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Add => "add",
            Variant::Sub => "sub",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add" => Ok(Variant::Add),
            "sub" => Ok(Variant::Sub),
            _ => Err(Error::InvalidInput(format!("unknown variant {s:?}, expected add or sub"))),
        }
    }
}

/// `log γ(s)`, on the principal branch of each `log Γ`.
pub fn log_gamma_factor(s: Complex64, variant: Variant) -> Result<Complex64> {
    let mut acc = -2.0 * s * std::f64::consts::PI.ln();
    for k in variant.shifts() {
        acc += log_gamma((s + k) / 2.0)?;
    }
    Ok(acc)
}

/// `γ(s) = π^{−2s} ∏ Γ((s + κ_j)/2)`.
///
/// ```
/// use shintani::afe::{gamma_factor, Variant};
/// use shintani::Complex64;
/// let g = gamma_factor(Complex64::new(0.5, 0.0), Variant::Add).unwrap();
/// // √2 Γ(1/3) Γ(1/6)
/// assert!((g.re - 2f64.sqrt() * 2.678938534707747 * 5.566316001780235).abs() < 1e-12 * g.re);
/// ```
pub fn gamma_factor(s: Complex64, variant: Variant) -> Result<Complex64> {
    Ok(log_gamma_factor(s, variant)?.exp())
}

/// `ε(s) = q^{1/2−s} γ(1−s)/γ(s)`; unimodular on the critical line.
pub fn epsilon_factor(s: Complex64, variant: Variant) -> Result<Complex64> {
    let l = (0.5 - s) * CONDUCTOR.ln() + log_gamma_factor(1.0 - s, variant)? - log_gamma_factor(s, variant)?;
    Ok(l.exp())
}

/// `Λ(s) = (432/π⁴)^{s/2} ∏ Γ((s+κ_j)/2) · ξ(s)`.
pub fn completed_lambda(s: Complex64, variant: Variant, xi: Complex64) -> Result<Complex64> {
    let mut l = s / 2.0 * (CONDUCTOR / std::f64::consts::PI.powi(4)).ln();
    for k in variant.shifts() {
        l += log_gamma((s + k) / 2.0)?;
    }
    Ok(l.exp() * xi)
}

/// `(ξ^add, ξ^sub) ↦ (ξ⁺, ξ⁻)`.
pub fn diagonal_transform(xi_add: Complex64, xi_sub: Complex64) -> (Complex64, Complex64) {
    ((xi_add + xi_sub) / (2.0 * 3f64.sqrt()), (xi_add - xi_sub) / 2.0)
}

/// `(ξ⁺, ξ⁻) ↦ (ξ^add, ξ^sub)`, the inverse of [`diagonal_transform`].
pub fn diagonal_combine(xi_plus: Complex64, xi_minus: Complex64) -> (Complex64, Complex64) {
    let s3 = 3f64.sqrt();
    (s3 * xi_plus + xi_minus, s3 * xi_plus - xi_minus)
}
