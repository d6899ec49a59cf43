//! Exact arithmetic on integral binary cubic forms.
//!
//! `GL₂` acts on forms by `(γ·f)(x, y) = f((x, y)γ) / |det γ|`. The
//! discriminant transforms as `Disc(γ·f) = det(γ)²·Disc(f)`, and the
//! `SL₂(ℤ)`-orbits with a given nonzero discriminant are finite in number.

mod covariant;
mod cubic;
mod enumerate;
mod matrix;
mod oracle;
mod real;
mod reduce;
mod table;

pub use covariant::{definite_covariant, hessian, quadratic_factor, real_root, Quadratic};
pub use cubic::{pairing_exact, IntegerCubicForm, RationalCubicForm};
pub use enumerate::enumerate_classes;
pub use matrix::{special_matrices_up_to, IntMatrix};
pub use oracle::{brute_force_class_oracle, stabilizer_by_search, STAB_SEARCH_BOUND};
pub use real::{a_t, iota_matrix, k_theta, mat_det, mat_inv, mat_mul, n_u, pairing, IwasawaElement, Mat2, RealCubicForm};
pub use reduce::{
    canonical_stabilizer, domain_position, gauss_reduce, reduce_form, stabilizer_order, DomainPosition, Reduction,
    DOMAIN_EPS,
};
pub use table::{dirichlet_coefficients, ClassCounts, ClassRecord, ClassTable, CoefficientVariant, CSV_HEADER};

use num_bigint::BigInt;

/// `Disc(f) = b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd`, exactly.
///
/// ```
/// use shintani::forms::{discriminant, IntegerCubicForm};
/// assert_eq!(discriminant(&IntegerCubicForm::new(1, 0, 0, 1)), (-27).into());
/// ```
pub fn discriminant(f: &IntegerCubicForm) -> BigInt {
    f.discriminant()
}

/// `γ·f` for any nonsingular integer matrix. Coefficients are rational in
/// general and integral when `|det γ| = 1`.
pub fn group_action(g: &IntMatrix, f: &IntegerCubicForm) -> crate::Result<RationalCubicForm> {
    f.act_rational(g)
}

/// The involution `ι` on Iwasawa coordinates.
pub fn iota_involution(g: &IwasawaElement) -> IwasawaElement {
    g.iota()
}
