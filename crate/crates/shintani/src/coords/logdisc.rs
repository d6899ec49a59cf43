//! Partial derivatives of `Disc` and `log |Disc|` in the coefficients.

use crate::forms::RealCubicForm;
use crate::{Error, Result};

// (coefficient, exponents of a, b, c, d)
const DISC_MONOMIALS: [(f64, [u32; 4]); 5] = [
    (1.0, [0, 2, 2, 0]),
    (-4.0, [1, 0, 3, 0]),
    (-4.0, [0, 3, 0, 1]),
    (-27.0, [2, 0, 0, 2]),
    (18.0, [1, 1, 1, 1]),
];

/// `D^β Disc(f)`, differentiated symbolically.
pub fn disc_partial(beta: [u32; 4], f: &RealCubicForm) -> f64 {
    let mut total = 0.0;
    for (coef, exps) in DISC_MONOMIALS {
        let mut term = coef;
        for k in 0..4 {
            if beta[k] > exps[k] {
                term = 0.0;
                break;
            }
            for j in 0..beta[k] {
                term *= (exps[k] - j) as f64;
            }
            term *= f.0[k].powi((exps[k] - beta[k]) as i32);
        }
        total += term;
    }
    total
}

/// Set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    fn rec(i: usize, max: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == a.len() {
            out.push(a.clone());
            return;
        }
        for v in 0..=max + 1 {
            a[i] = v;
            rec(i + 1, max.max(v), a, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    // first element always opens block 0
    a[0] = 0;
    rec(1, 0, &mut a, &mut out);
    out
}

/// `D^α log |Disc(f)|` for `|α| ≤ 4`.
///
/// Uses `∂_{1…k} log P = Σ_π (−1)^{|π|−1} (|π|−1)! Π_{B∈π} ∂_B P / P` over set
/// partitions `π` of the differentiation slots.
///
/// ```
/// use shintani::coords::log_disc_partial;
/// use shintani::forms::RealCubicForm;
/// let f = RealCubicForm::new(1.0, 0.0, 0.0, 1.0);
/// assert!((log_disc_partial([0, 0, 0, 0], &f).unwrap() - 27f64.ln()).abs() < 1e-15);
/// ```
pub fn log_disc_partial(alpha: [u32; 4], f: &RealCubicForm) -> Result<f64> {
    let order: u32 = alpha.iter().sum();
    if order > 4 {
        return Err(Error::InvalidInput(format!("|α| = {order} exceeds 4")));
    }
    let p = f.discriminant();
    if p == 0.0 || !p.is_finite() {
        return Err(Error::Singular("zero discriminant".into()));
    }
    if order == 0 {
        return Ok(p.abs().ln());
    }
    let slots: Vec<usize> = (0..4).flat_map(|k| std::iter::repeat(k).take(alpha[k] as usize)).collect();
    let mut total = 0.0;
    for part in set_partitions(slots.len()) {
        let blocks = part.iter().max().map_or(0, |m| m + 1);
        let mut prod = 1.0;
        for b in 0..blocks {
            let mut beta = [0u32; 4];
            for (i, &blk) in part.iter().enumerate() {
                if blk == b {
                    beta[slots[i]] += 1;
                }
            }
            prod *= disc_partial(beta, f) / p;
        }
        let sign = if blocks % 2 == 1 { 1.0 } else { -1.0 };
        let fact: f64 = (1..blocks).map(|k| k as f64).product();
        total += sign * fact * prod;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..5).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15]);
    }
}
