//! Canonical orbit representatives under `SL₂(ℤ)`.
//!
//! A form is *reduced* when its definite covariant is Gauss reduced, i.e. its
//! Iwasawa point lies in the closed fundamental domain `|u| ≤ 1/2`,
//! `u² + t⁴ ≥ 1`. The reduced members of an orbit form a finite set; the
//! canonical representative is its lexicographically smallest sign-normalised
//! element. For positive discriminant the test is exact on the integral
//! Hessian. For negative discriminant it is evaluated in floating point with
//! a margin of [`DOMAIN_EPS`]; membership is a deterministic function of the
//! form, so the choice is still canonical.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::covariant::quadratic_factor;
use super::cubic::IntegerCubicForm;
use super::matrix::{special_matrices_up_to, IntMatrix};
use crate::{Error, Result};

/// Slack in the negative-discriminant domain test.
pub const DOMAIN_EPS: f64 = 1e-9;

const MAX_STEPS: usize = 100_000;

/// Position of a form's covariant point relative to the fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainPosition {
    Outside,
    Boundary,
    Interior,
}

/// Output of [`reduce_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// The canonical representative of the orbit.
    pub representative: IntegerCubicForm,
    /// `γ ∈ SL₂(ℤ)` with `γ·f = representative`.
    pub witness: IntMatrix,
    /// Order of the stabiliser of the representative in `SL₂(ℤ)`.
    pub stab_order: u32,
}

fn small_matrices() -> &'static [IntMatrix] {
    static CELL: OnceLock<Vec<IntMatrix>> = OnceLock::new();
    CELL.get_or_init(|| special_matrices_up_to(2))
}

/// Where the covariant point of `f` sits; `disc_sign` must be the sign of `Disc(f)`.
pub fn domain_position(f: &IntegerCubicForm, disc_sign: i32) -> DomainPosition {
    if disc_sign > 0 {
        if let Some([p, q, r]) = f.hessian_i128() {
            return classify_exact(&q.abs(), &p, &r);
        }
        let [p, q, r] = f.hessian();
        return classify_exact(&q.abs(), &p, &r);
    }
    let (u, t) = quadratic_factor(&f.to_real()).point();
    let n = u * u + t * t * t * t;
    if !(u.abs() <= 0.5 + DOMAIN_EPS && n >= 1.0 - DOMAIN_EPS) {
        DomainPosition::Outside
    } else if u.abs() < 0.5 - 4.0 * DOMAIN_EPS && n > 1.0 + 4.0 * DOMAIN_EPS {
        DomainPosition::Interior
    } else {
        DomainPosition::Boundary
    }
}

// Gauss reduction |Q| ≤ P ≤ R of the Hessian Px² + Qxy + Ry².
fn classify_exact<T: Ord>(q_abs: &T, p: &T, r: &T) -> DomainPosition {
    if !(q_abs <= p && p <= r) {
        DomainPosition::Outside
    } else if q_abs == p || p == r {
        DomainPosition::Boundary
    } else {
        DomainPosition::Interior
    }
}

enum Step {
    Translate(i64),
    Swap,
    Done,
}

fn step_positive(f: &IntegerCubicForm) -> Result<Step> {
    let [p, q, r] = match f.hessian_i128() {
        Some(h) => h.map(BigInt::from),
        None => f.hessian(),
    };
    if q.abs() > p {
        // u = q/(2p); translate by k = −round(u) = floor((p − q)/(2p))
        let k = (&p - &q).div_floor(&(BigInt::from(2) * &p));
        let k = k.to_i64().ok_or_else(|| Error::Overflow("reducing a form".into()))?;
        return Ok(Step::Translate(k));
    }
    if p > r {
        return Ok(Step::Swap);
    }
    Ok(Step::Done)
}

fn step_negative(f: &IntegerCubicForm) -> Result<Step> {
    let (u, t) = quadratic_factor(&f.to_real()).point();
    if !u.is_finite() || !t.is_finite() {
        return Err(Error::NoConvergence(format!("covariant point of {f} is not finite")));
    }
    if u.abs() > 0.5 + 1e-12 {
        let k = -u.round();
        if k.abs() > 9.0e18 {
            return Err(Error::Overflow("reducing a form".into()));
        }
        return Ok(Step::Translate(k as i64));
    }
    if u * u + t.powi(4) < 1.0 - 1e-12 {
        return Ok(Step::Swap);
    }
    Ok(Step::Done)
}

/// Move `f` into the (closed, for negative discriminant slightly widened)
/// reduced region, returning the reached form and the accumulated matrix.
pub fn gauss_reduce(f: &IntegerCubicForm) -> Result<(IntegerCubicForm, IntMatrix)> {
    let disc = f.discriminant();
    if disc.is_zero() {
        return Err(Error::Singular(format!("{f}")));
    }
    let positive = disc.is_positive();
    let mut cur = f.clone();
    let mut g = IntMatrix::IDENTITY;
    for _ in 0..MAX_STEPS {
        let step = if positive { step_positive(&cur)? } else { step_negative(&cur)? };
        let m = match step {
            Step::Done => return Ok((cur, g)),
            Step::Translate(k) => IntMatrix::unipotent(k),
            Step::Swap => IntMatrix::S,
        };
        cur = cur.act(&m)?;
        g = m.mul(&g)?;
    }
    Err(Error::NoConvergence(format!("reduction of {f} did not terminate")))
}

/// The canonical representative of the `SL₂(ℤ)`-orbit of `f`, a witness, and
/// the stabiliser order of the representative.
///
/// ```
/// use shintani::forms::{reduce_form, IntegerCubicForm};
/// let f = IntegerCubicForm::new(0, 1, 3, 2);
/// let r = reduce_form(&f).unwrap();
/// assert_eq!(f.act(&r.witness).unwrap(), r.representative);
/// assert_eq!(r.representative, reduce_form(&IntegerCubicForm::new(0, 1, 1, 0)).unwrap().representative);
/// ```
pub fn reduce_form(f: &IntegerCubicForm) -> Result<Reduction> {
    let (f0, g0) = gauss_reduce(f)?;
    let sign = if f.discriminant().is_positive() { 1 } else { -1 };
    let mut best: Option<(IntegerCubicForm, IntMatrix)> = None;
    let mut stab = 0u32;
    for m in small_matrices() {
        let h = f0.act(m)?;
        if h == f0 {
            stab += 1;
        }
        if !h.is_sign_normalized() || domain_position(&h, sign) == DomainPosition::Outside {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, bm)) => h < *b || (h == *b && prefer(m, bm)),
        };
        if better {
            best = Some((h, *m));
        }
    }
    let (rep, m) = best.ok_or_else(|| Error::NoConvergence(format!("no reduced form found for {f}")))?;
    if stab != 1 && stab != 3 {
        return Err(Error::Validation(format!("stabiliser of {f0} has order {stab}")));
    }
    let witness = m.mul(&g0)?;
    Ok(Reduction { representative: rep, witness, stab_order: stab })
}

fn prefer(a: &IntMatrix, b: &IntMatrix) -> bool {
    let key = |m: &IntMatrix| (*m != IntMatrix::IDENTITY, m.max_abs_entry(), (m.p, m.q, m.r, m.s));
    key(a) < key(b)
}

/// Order of `{γ ∈ SL₂(ℤ) : γ·f = f}`; always 1 or 3 for nonzero discriminant.
pub fn stabilizer_order(f: &IntegerCubicForm) -> Result<u32> {
    Ok(reduce_form(f)?.stab_order)
}

/// Whether `f` is the canonical representative of its orbit, and if so the
/// stabiliser order. Cheap for forms strictly inside the reduced region.
pub fn canonical_stabilizer(f: &IntegerCubicForm, disc_sign: i32) -> Result<Option<u32>> {
    if !f.is_sign_normalized() {
        return Ok(None);
    }
    match domain_position(f, disc_sign) {
        DomainPosition::Outside => Ok(None),
        DomainPosition::Interior => Ok(Some(1)),
        DomainPosition::Boundary => {
            let r = reduce_form(f)?;
            Ok(if r.representative == *f { Some(r.stab_order) } else { None })
        }
    }
}
