use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::real::RealCubicForm;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Coeffs {
    Small([i64; 4]),
    Big(Box<[BigInt; 4]>),
}

/// An integral binary cubic form `ax³ + bx²y + cxy² + dy³`.
///
/// Coefficients that fit in `i64` are stored inline; larger ones are promoted
/// to `BigInt`. The representation is normalised, so derived equality and
/// hashing agree with equality of coefficient tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerCubicForm(Coeffs);

impl IntegerCubicForm {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntegerCubicForm(Coeffs::Small([a, b, c, d]))
    }

    pub fn from_array(v: [i64; 4]) -> Self {
        IntegerCubicForm(Coeffs::Small(v))
    }

    pub fn from_big(v: [BigInt; 4]) -> Self {
        let small: Option<Vec<i64>> = v.iter().map(|x| x.to_i64()).collect();
        match small {
            Some(s) => IntegerCubicForm(Coeffs::Small([s[0], s[1], s[2], s[3]])),
            None => IntegerCubicForm(Coeffs::Big(Box::new(v))),
        }
    }

    fn from_i128(v: [i128; 4]) -> Self {
        let small: Option<Vec<i64>> = v.iter().map(|&x| i64::try_from(x).ok()).collect();
        match small {
            Some(s) => IntegerCubicForm(Coeffs::Small([s[0], s[1], s[2], s[3]])),
            None => IntegerCubicForm(Coeffs::Big(Box::new(v.map(BigInt::from)))),
        }
    }

    /// The coefficients as `i64` if they all fit.
    pub fn small(&self) -> Option<[i64; 4]> {
        match &self.0 {
            Coeffs::Small(v) => Some(*v),
            Coeffs::Big(_) => None,
        }
    }

    pub fn coeffs(&self) -> [BigInt; 4] {
        match &self.0 {
            Coeffs::Small(v) => v.map(BigInt::from),
            Coeffs::Big(v) => (**v).clone(),
        }
    }

    pub fn to_real(&self) -> RealCubicForm {
        match &self.0 {
            Coeffs::Small(v) => RealCubicForm(v.map(|x| x as f64)),
            Coeffs::Big(v) => RealCubicForm([0, 1, 2, 3].map(|i| v[i].to_f64().unwrap_or(f64::NAN))),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Coeffs::Small(v) if v.iter().all(|&x| x != i64::MIN) => {
                IntegerCubicForm(Coeffs::Small(v.map(|x| -x)))
            }
            _ => IntegerCubicForm::from_big(self.coeffs().map(|x| -x)),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Coeffs::Small([0, 0, 0, 0]))
    }

    /// `a > 0`, or `a = 0` and `b > 0`.
    pub fn is_sign_normalized(&self) -> bool {
        match &self.0 {
            Coeffs::Small([a, b, ..]) => *a > 0 || (*a == 0 && *b > 0),
            Coeffs::Big(v) => v[0].is_positive() || (v[0].is_zero() && v[1].is_positive()),
        }
    }

    /// The discriminant `b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd`, computed exactly.
    pub fn discriminant(&self) -> BigInt {
        if let Some(d) = self.discriminant_i128() {
            return BigInt::from(d);
        }
        let [a, b, c, d] = self.coeffs();
        disc_big(&a, &b, &c, &d)
    }

    /// The discriminant when it fits in `i128`; `None` on overflow.
    pub fn discriminant_i128(&self) -> Option<i128> {
        let [a, b, c, d] = self.small()?.map(|x| x as i128);
        let t1 = b.checked_mul(b)?.checked_mul(c)?.checked_mul(c)?;
        let t2 = a.checked_mul(c)?.checked_mul(c)?.checked_mul(c)?.checked_mul(4)?;
        let t3 = b.checked_mul(b)?.checked_mul(b)?.checked_mul(d)?.checked_mul(4)?;
        let t4 = a.checked_mul(a)?.checked_mul(d)?.checked_mul(d)?.checked_mul(27)?;
        let t5 = a.checked_mul(b)?.checked_mul(c)?.checked_mul(d)?.checked_mul(18)?;
        t1.checked_sub(t2)?.checked_sub(t3)?.checked_sub(t4)?.checked_add(t5)
    }

    /// The Hessian covariant `(b² − 3ac, bc − 9ad, c² − 3bd)`, read as
    /// `Px² + Qxy + Ry²`. It has discriminant `−3·Disc(f)`.
    pub fn hessian(&self) -> [BigInt; 3] {
        if let Some(h) = self.hessian_i128() {
            return h.map(BigInt::from);
        }
        let [a, b, c, d] = self.coeffs();
        [
            &b * &b - 3 * &a * &c,
            &b * &c - 9 * &a * &d,
            &c * &c - 3 * &b * &d,
        ]
    }

    pub fn hessian_i128(&self) -> Option<[i128; 3]> {
        let [a, b, c, d] = self.small()?.map(|x| x as i128);
        Some([
            b.checked_mul(b)?.checked_sub(a.checked_mul(c)?.checked_mul(3)?)?,
            b.checked_mul(c)?.checked_sub(a.checked_mul(d)?.checked_mul(9)?)?,
            c.checked_mul(c)?.checked_sub(b.checked_mul(d)?.checked_mul(3)?)?,
        ])
    }

    /// `γ·f` for a matrix with determinant ±1. Other matrices are rejected;
    /// use [`IntegerCubicForm::act_rational`] for them.
    pub fn act(&self, g: &IntMatrix) -> Result<IntegerCubicForm> {
        if !g.is_unimodular() {
            return Err(Error::InvalidInput(format!(
                "integral action needs |det| = 1, got det {}",
                g.det()
            )));
        }
        if let Some(v) = self.small() {
            if let Some(out) = act_i128(v, g) {
                return Ok(IntegerCubicForm::from_i128(out));
            }
        }
        let [a, b, c, d] = self.coeffs();
        Ok(IntegerCubicForm::from_big(act_big(&a, &b, &c, &d, g)))
    }

    /// `γ·f` for any nonsingular integer matrix; coefficients are divided by
    /// `|det γ|` and are rational in general.
    pub fn act_rational(&self, g: &IntMatrix) -> Result<RationalCubicForm> {
        let det = g.det();
        if det == 0 {
            return Err(Error::InvalidInput("singular matrix".into()));
        }
        let [a, b, c, d] = self.coeffs();
        let v = act_big(&a, &b, &c, &d, g);
        let den = BigInt::from(det.abs());
        Ok(RationalCubicForm(v.map(|x| BigRational::new(x, den.clone()))))
    }

    /// Largest absolute coefficient, saturated to `u64`.
    pub fn height(&self) -> u64 {
        match &self.0 {
            Coeffs::Small(v) => v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0),
            Coeffs::Big(_) => u64::MAX,
        }
    }
}

fn disc_big(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d
}

fn act_i128(v: [i64; 4], g: &IntMatrix) -> Option<[i128; 4]> {
    let [a, b, c, d] = v.map(|x| x as i128);
    let (p, q, r, s) = (g.p as i128, g.q as i128, g.r as i128, g.s as i128);
    let m = |x: i128, y: i128| x.checked_mul(y);
    let cube_val = |x: i128, y: i128| -> Option<i128> {
        // f(x, y)
        let x2 = m(x, x)?;
        let y2 = m(y, y)?;
        m(a, m(x2, x)?)?
            .checked_add(m(b, m(x2, y)?)?)?
            .checked_add(m(c, m(x, y2)?)?)?
            .checked_add(m(d, m(y2, y)?)?)
    };
    let na = cube_val(p, q)?;
    let nd = cube_val(r, s)?;
    // polarisation terms
    let nb = m(m(3, a)?, m(m(p, p)?, r)?)?
        .checked_add(m(b, m(m(p, p)?, s)?.checked_add(m(2, m(m(p, q)?, r)?)?)?)?)?
        .checked_add(m(c, m(m(q, q)?, r)?.checked_add(m(2, m(m(p, q)?, s)?)?)?)?)?
        .checked_add(m(m(3, d)?, m(m(q, q)?, s)?)?)?;
    let nc = m(m(3, a)?, m(p, m(r, r)?)?)?
        .checked_add(m(b, m(m(r, r)?, q)?.checked_add(m(2, m(m(p, r)?, s)?)?)?)?)?
        .checked_add(m(c, m(m(s, s)?, p)?.checked_add(m(2, m(m(q, r)?, s)?)?)?)?)?
        .checked_add(m(m(3, d)?, m(q, m(s, s)?)?)?)?;
    Some([na, nb, nc, nd])
}

fn act_big(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, g: &IntMatrix) -> [BigInt; 4] {
    let (p, q, r, s) = (
        BigInt::from(g.p),
        BigInt::from(g.q),
        BigInt::from(g.r),
        BigInt::from(g.s),
    );
    let na = a * &p * &p * &p + b * &p * &p * &q + c * &p * &q * &q + d * &q * &q * &q;
    let nd = a * &r * &r * &r + b * &r * &r * &s + c * &r * &s * &s + d * &s * &s * &s;
    let nb = 3 * a * &p * &p * &r
        + b * (&p * &p * &s + 2 * &p * &q * &r)
        + c * (&q * &q * &r + 2 * &p * &q * &s)
        + 3 * d * &q * &q * &s;
    let nc = 3 * a * &p * &r * &r
        + b * (&r * &r * &q + 2 * &p * &r * &s)
        + c * (&s * &s * &p + 2 * &q * &r * &s)
        + 3 * d * &q * &s * &s;
    [na, nb, nc, nd]
}

impl Ord for IntegerCubicForm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Coeffs::Small(x), Coeffs::Small(y)) => x.cmp(y),
            _ => self.coeffs().cmp(&other.coeffs()),
        }
    }
}

impl PartialOrd for IntegerCubicForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IntegerCubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntegerCubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Coeffs::Small([a, b, c, d]) => write!(f, "({a},{b},{c},{d})"),
            Coeffs::Big(v) => write!(f, "({},{},{},{})", v[0], v[1], v[2], v[3]),
        }
    }
}

impl From<[i64; 4]> for IntegerCubicForm {
    fn from(v: [i64; 4]) -> Self {
        IntegerCubicForm::from_array(v)
    }
}

/// A cubic form with rational coefficients, the general output of
/// [`IntegerCubicForm::act_rational`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalCubicForm(pub [BigRational; 4]);

impl RationalCubicForm {
    pub fn discriminant(&self) -> BigRational {
        let [a, b, c, d] = &self.0;
        let four = BigRational::from_integer(4.into());
        let k27 = BigRational::from_integer(27.into());
        let k18 = BigRational::from_integer(18.into());
        b * b * c * c - &four * a * c * c * c - &four * b * b * b * d - k27 * a * a * d * d
            + k18 * a * b * c * d
    }

    /// The integral form, if every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntegerCubicForm> {
        if self.0.iter().all(|x| x.is_integer()) {
            Some(IntegerCubicForm::from_big(self.0.clone().map(|x| x.to_integer())))
        } else {
            None
        }
    }
}

/// `⟨f, g⟩ = f₁g₄ − f₂g₃/3 + f₃g₂/3 − f₄g₁`, exactly, on integral forms.
pub fn pairing_exact(f: &IntegerCubicForm, g: &IntegerCubicForm) -> BigRational {
    let [f1, f2, f3, f4] = f.coeffs();
    let [g1, g2, g3, g4] = g.coeffs();
    let three = BigInt::from(3);
    BigRational::new(3 * (&f1 * &g4 - &f4 * &g1) - &f2 * &g3 + &f3 * &g2, three)
}
