use std::fmt;

use crate::{Error, Result};

/// A 2×2 integer matrix `[[p, q], [r, s]]`.
///
/// Matrices act on forms on the right of the variables:
/// `(γ·f)(x, y) = f((x, y)γ) / |det γ|`, which is a left action.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix { p: 1, q: 0, r: 0, s: 1 };
    pub const MINUS_IDENTITY: IntMatrix = IntMatrix { p: -1, q: 0, r: 0, s: -1 };
    /// `[[0, 1], [-1, 0]]`, acting as `(a, b, c, d) ↦ (d, -c, b, -a)`.
    pub const S: IntMatrix = IntMatrix { p: 0, q: 1, r: -1, s: 0 };
    /// `[[1, 0], [1, 1]]`, the lower unipotent `n_1`.
    pub const T: IntMatrix = IntMatrix { p: 1, q: 0, r: 1, s: 1 };
    /// `[[0, 1], [1, 0]]`, the coordinate swap (determinant −1).
    pub const SWAP: IntMatrix = IntMatrix { p: 0, q: 1, r: 1, s: 0 };

    pub const fn new(p: i64, q: i64, r: i64, s: i64) -> Self {
        IntMatrix { p, q, r, s }
    }

    /// Lower unipotent `n_k = [[1, 0], [k, 1]]`.
    pub const fn unipotent(k: i64) -> Self {
        IntMatrix { p: 1, q: 0, r: k, s: 1 }
    }

    pub fn det(&self) -> i128 {
        self.p as i128 * self.s as i128 - self.q as i128 * self.r as i128
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn is_special(&self) -> bool {
        self.det() == 1
    }

    /// Matrix product `self · other`, failing on overflow.
    pub fn mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        let f = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
            x.checked_mul(y)
                .and_then(|a| z.checked_mul(w).and_then(|b| a.checked_add(b)))
                .ok_or_else(|| Error::Overflow("multiplying matrices".into()))
        };
        Ok(IntMatrix {
            p: f(self.p, o.p, self.q, o.r)?,
            q: f(self.p, o.q, self.q, o.s)?,
            r: f(self.r, o.p, self.s, o.r)?,
            s: f(self.r, o.q, self.s, o.s)?,
        })
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse(&self) -> Result<IntMatrix> {
        match self.det() {
            1 => Ok(IntMatrix::new(self.s, -self.q, -self.r, self.p)),
            -1 => Ok(IntMatrix::new(-self.s, self.q, self.r, -self.p)),
            _ => Err(Error::InvalidInput("matrix is not invertible over Z".into())),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::new(-self.p, -self.q, -self.r, -self.s)
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [[self.p as f64, self.q as f64], [self.r as f64, self.s as f64]]
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.p.abs().max(self.q.abs()).max(self.r.abs()).max(self.s.abs())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

/// All determinant-one matrices with entries in `[-bound, bound]`, in a fixed order.
pub fn special_matrices_up_to(bound: i64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        for q in -bound..=bound {
            for r in -bound..=bound {
                for s in -bound..=bound {
                    let m = IntMatrix::new(p, q, r, s);
                    if m.det() == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}
