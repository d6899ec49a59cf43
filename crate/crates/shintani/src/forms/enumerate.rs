//! Enumeration of canonical representatives with `0 < |Disc| ≤ X`.
//!
//! Coefficient boxes come from the Iwasawa coordinates of a reduced form:
//! `f = n_u h` with `h = a_t k_θ d_λ f_±`, `|u| ≤ 1/2`, `t ≥ (3/4)^{1/4}` and
//! `λ ≤ X^{1/4}`. For fixed `(a, b, c)` the discriminant is a concave
//! quadratic in `d`, so the admissible `d` form at most two intervals.

use rayon::prelude::*;

use super::cubic::IntegerCubicForm;
use super::reduce::canonical_stabilizer;
use super::table::{ClassRecord, ClassTable};
use crate::Result;

// Largest |coefficient i| of k_θ·f_± over θ and both signs, scaled to λ = 1.
const K1: f64 = std::f64::consts::FRAC_1_SQRT_2;
const K23: f64 = 0.930_604_859_102_099_7; // 3 / 108^{1/4}

fn t_min() -> f64 {
    0.75f64.powf(0.25) * (1.0 - 1e-6)
}

/// All canonical class representatives with `0 < |Disc| ≤ x`, in canonical order.
///
/// Uses the current rayon pool; the result does not depend on its size.
pub fn enumerate_classes(x: u64) -> Result<ClassTable> {
    if x == 0 {
        return Ok(ClassTable::empty(0));
    }
    let lam = (x as f64).powf(0.25) * (1.0 + 1e-9);
    let a_max = (K1 * lam / t_min().powi(3)).floor() as i64 + 1;
    let b0_max = (x as f64).sqrt().floor() as i64 + 1;

    let mut tasks: Vec<(i64, i64)> = Vec::new();
    for b in 1..=b0_max {
        tasks.push((0, b));
    }
    for a in 1..=a_max {
        let b_max = b_bound(a, lam);
        for b in -b_max..=b_max {
            tasks.push((a, b));
        }
    }
    let chunks: Vec<Result<Vec<ClassRecord>>> = tasks
        .par_iter()
        .map(|&(a, b)| if a == 0 { scan_a0(b, x) } else { scan_ab(a, b, x, lam) })
        .collect();
    let mut records = Vec::new();
    for c in chunks {
        records.extend(c?);
    }
    ClassTable::from_records(x, records)
}

fn b_bound(a: i64, lam: f64) -> i64 {
    (1.5 * a as f64 + K23 * lam / t_min()).ceil() as i64 + 1
}

fn c_bound(a: i64, lam: f64) -> i64 {
    let tmax = (K1 * lam / a as f64).cbrt().max(t_min());
    let g = |t: f64| K23 * lam / t + K23 * lam * t;
    (0.75 * a as f64 + g(t_min()).max(g(tmax))).ceil() as i64 + 1
}

fn push_if_canonical(f: IntegerCubicForm, x: u64, out: &mut Vec<ClassRecord>) -> Result<()> {
    let Some(d) = f.discriminant_i128() else { return Ok(()) };
    if d == 0 || d.unsigned_abs() > x as u128 {
        return Ok(());
    }
    let sign = if d > 0 { 1 } else { -1 };
    if let Some(stab) = canonical_stabilizer(&f, sign)? {
        out.push(ClassRecord { representative: f, disc: d as i64, stab_order: stab });
    }
    Ok(())
}

fn scan_a0(b: i64, x: u64) -> Result<Vec<ClassRecord>> {
    // Disc = b²(c² − 4bd) and the reduced covariant forces |c| ≤ b.
    let mut out = Vec::new();
    let s = x as f64 / (b as f64 * b as f64);
    for c in -b..=b {
        let c2 = (c * c) as f64;
        let lo = ((c2 - s) / (4.0 * b as f64)).floor() as i64 - 1;
        let hi = ((c2 + s) / (4.0 * b as f64)).ceil() as i64 + 1;
        for d in lo..=hi {
            push_if_canonical(IntegerCubicForm::new(0, b, c, d), x, &mut out)?;
        }
    }
    Ok(out)
}

fn scan_ab(a: i64, b: i64, x: u64, lam: f64) -> Result<Vec<ClassRecord>> {
    let mut out = Vec::new();
    let cm = c_bound(a, lam);
    let (af, bf, xf) = (a as f64, b as f64, x as f64);
    for c in -cm..=cm {
        let cf = c as f64;
        // Disc(d) = q2 d² + q1 d + q0
        let q2 = -27.0 * af * af;
        let q1 = 18.0 * af * bf * cf - 4.0 * bf * bf * bf;
        let q0 = bf * bf * cf * cf - 4.0 * af * cf * cf * cf;
        let Some((lo, hi)) = roots(q2, q1, q0 + xf) else { continue };
        let lo = lo.floor() as i64 - 1;
        let hi = hi.ceil() as i64 + 1;
        match roots(q2, q1, q0 - xf) {
            Some((e1, e2)) if e2 - e1 > 4.0 => {
                let m1 = (e1.ceil() as i64 + 1).min(hi);
                let m2 = (e2.floor() as i64 - 1).max(lo);
                for d in lo..=m1 {
                    push_if_canonical(IntegerCubicForm::new(a, b, c, d), x, &mut out)?;
                }
                for d in m2.max(m1 + 1)..=hi {
                    push_if_canonical(IntegerCubicForm::new(a, b, c, d), x, &mut out)?;
                }
            }
            _ => {
                for d in lo..=hi {
                    push_if_canonical(IntegerCubicForm::new(a, b, c, d), x, &mut out)?;
                }
            }
        }
    }
    Ok(out)
}

// Real roots of q2 z² + q1 z + q0 with q2 < 0, ascending.
fn roots(q2: f64, q1: f64, q0: f64) -> Option<(f64, f64)> {
    let disc = q1 * q1 - 4.0 * q2 * q0;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let r1 = (-q1 + s) / (2.0 * q2);
    let r2 = (-q1 - s) / (2.0 * q2);
    Some((r1.min(r2), r1.max(r2)))
}
