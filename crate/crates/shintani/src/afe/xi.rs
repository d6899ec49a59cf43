use num_complex::Complex64;
use rayon::prelude::*;

use super::weight::{Weight, WeightKernel, CONTOURS};
use super::{completed_lambda, epsilon_factor, log_gamma_factor, Variant, CONDUCTOR};
use crate::forms::{dirichlet_coefficients, ClassTable};
use crate::{Error, Result};

/// Contours used for the tail certificate. On `Re u = c`,
/// `|V_s(y)| ≤ M_c·y^{−c}` with `M_c = (1/2π)∫|G(u) q^{u/2} γ(s+u)/γ(s)/u| dv`:
/// the weight decay lemma with `A = c` and an explicit constant. `A = 8` is
/// always tried; the larger values only tighten the certificate.
pub const TAIL_CONTOURS: [f64; 4] = [8.0, 10.0, 12.0, 16.0];
const CHUNK: usize = 8192;
const LIN_SAFETY: f64 = 1.5;

/// Settings for [`xi_critical`].
#[derive(Clone, Copy, Debug)]
pub struct XiConfig {
    pub weight: Weight,
    /// Absolute target for the certified truncation tail.
    pub tail_tol: f64,
    /// Fixed truncation; `None` chooses the smallest certified length.
    pub truncation: Option<u64>,
    /// Node spacing of the weight kernels.
    pub step: f64,
}

impl Default for XiConfig {
    fn default() -> Self {
        XiConfig { weight: Weight::default(), tail_tol: 1e-8, truncation: None, step: 0.1 }
    }
}

/// One evaluation of `ξ(1/2 + iτ)`.
#[derive(Clone, Debug)]
pub struct CriticalEvaluation {
    pub tau: f64,
    pub s: Complex64,
    pub variant: Variant,
    pub weight: Weight,
    /// Truncation length of both sums.
    pub truncation: u64,
    pub table_bound: u64,
    pub value: Complex64,
    /// `Σ a(n) n^{−s} V_s(n)`.
    pub first_sum: Complex64,
    /// `Σ a(n) n^{s−1} V_{1−s}(n)`.
    pub second_sum: Complex64,
    pub epsilon: Complex64,
    /// Bound on the omitted terms `n > N` of both sums.
    pub tail_bound: f64,
    /// Bound on the residue terms, which are not added to `value`.
    pub residue_bound: f64,
    /// Set when `|τ| < 40`, where the residue bound is not asserted small.
    pub residue_caveat: bool,
    /// The frozen constant `C` in `Σ_{n≤x} |a(n)| ≤ C x`.
    pub linear_constant: f64,
    pub kernel_nodes: usize,
}

impl CriticalEvaluation {
    /// `Λ(s) = q^{s/2} γ(s) ξ(s)`.
    pub fn lambda(&self) -> Result<Complex64> {
        completed_lambda(self.s, self.variant, self.value)
    }
}

/// `C = 1.5·max_{n ≥ n₀} n^{−1} Σ_{m≤n} |a(m)|`, frozen from the coefficients at hand.
pub fn linear_growth_constant(coeffs: &[f64]) -> f64 {
    let n0 = 100.min(coeffs.len().saturating_sub(1)).max(1);
    let mut acc = 0.0;
    let mut best: f64 = 0.0;
    for (n, a) in coeffs.iter().enumerate().skip(1) {
        acc += a.abs();
        if n >= n0 {
            best = best.max(acc / n as f64);
        }
    }
    LIN_SAFETY * best
}

// admissible lines for a weight, falling back to just inside its strip
fn admissible(list: &[f64], weight: &Weight) -> Vec<f64> {
    let lim = weight.max_contour() - 0.5;
    let v: Vec<f64> = list.iter().copied().filter(|&c| c <= lim).collect();
    if v.is_empty() {
        vec![lim]
    } else {
        v
    }
}

// C·M·N^{1/2−c}·σ/(σ−1) with σ = c + 1/2, from partial summation against Σ|a| ≤ Cx
fn tail_at(n: u64, c: f64, c_lin: f64, moment: f64) -> f64 {
    let sigma = c + 0.5;
    c_lin * moment * (n as f64).powf(0.5 - c) * sigma / (sigma - 1.0)
}

/// `ξ(1/2 + iτ)` by the approximate functional equation with coefficients
/// from `table`. Both sums are truncated at the same `N`, chosen so that
/// the certified tail is below `cfg.tail_tol` unless `cfg.truncation` fixes it.
pub fn xi_critical(tau: f64, variant: Variant, table: &ClassTable, cfg: &XiConfig) -> Result<CriticalEvaluation> {
    if !(tau.abs() >= 1.0) || !tau.is_finite() {
        return Err(Error::InvalidInput(format!("xi_critical needs |τ| ≥ 1, got {tau}")));
    }
    cfg.weight.validate()?;
    if !(cfg.tail_tol > 0.0) {
        return Err(Error::InvalidInput("tail_tol must be positive".into()));
    }
    let s = Complex64::new(0.5, tau);
    let sd = 1.0 - s;
    let coeffs = dirichlet_coefficients(table, variant.coefficients());
    let x = table.bound();
    let c_lin = linear_growth_constant(&coeffs);

    // (c, M_c) for s and 1 − s together
    let mut tails = Vec::new();
    for c in admissible(&TAIL_CONTOURS, &cfg.weight) {
        let m = WeightKernel::new(s, variant, cfg.weight, c, cfg.step)?.abs_moment()
            + WeightKernel::new(sd, variant, cfg.weight, c, cfg.step)?.abs_moment();
        tails.push((c, m));
    }
    let tail_of = |n: u64| tails.iter().map(|&(c, m)| tail_at(n, c, c_lin, m)).fold(f64::INFINITY, f64::min);
    let n = match cfg.truncation {
        Some(n) => {
            if n > x {
                return Err(Error::TableTooSmall { have: x, need: n });
            }
            n.max(1)
        }
        None => {
            let need = tails
                .iter()
                .map(|&(c, m)| {
                    let sigma = c + 0.5;
                    (c_lin * m * sigma / ((sigma - 1.0) * cfg.tail_tol)).powf(1.0 / (c - 0.5)).ceil()
                })
                .fold(f64::INFINITY, f64::min);
            let need = if need.is_finite() { (need as u64).max(1) } else { u64::MAX };
            if need > x {
                return Err(Error::TableTooSmall { have: x, need });
            }
            need
        }
    };
    let tail_bound = tail_of(n);

    let mut kernels = Vec::new();
    for c in admissible(&CONTOURS, &cfg.weight) {
        let k = [
            WeightKernel::new(s, variant, cfg.weight, c, cfg.step)?,
            WeightKernel::new(sd, variant, cfg.weight, c, cfg.step)?,
        ];
        let lm = (k[0].abs_moment() + k[1].abs_moment()).ln();
        kernels.push((c, lm, k));
    }
    let nodes = kernels.iter().map(|k| k.2[0].nodes() + k.2[1].nodes()).sum();
    // the line with the smallest y^{−c} M_c at y = m
    let pick = |m: f64| {
        let lm = m.ln();
        let mut best = 0;
        for (i, k) in kernels.iter().enumerate() {
            if k.1 - k.0 * lm < kernels[best].1 - kernels[best].0 * lm {
                best = i;
            }
        }
        &kernels[best].2
    };

    let parts: Vec<(Complex64, Complex64)> = coeffs[1..=n as usize]
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(ci, chunk)| {
            let mut s1 = Complex64::new(0.0, 0.0);
            let mut s2 = Complex64::new(0.0, 0.0);
            for (k, &a) in chunk.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let m = (ci * CHUNK + k + 1) as f64;
                let kern = pick(m);
                // n^{−s} and n^{s−1} = conj(n^{−s}) on the critical line
                let p = Complex64::from_polar(a / m.sqrt(), -tau * m.ln());
                s1 += p * kern[0].eval(m);
                s2 += p.conj() * kern[1].eval(m);
            }
            (s1, s2)
        })
        .collect();
    let mut first_sum = Complex64::new(0.0, 0.0);
    let mut second_sum = Complex64::new(0.0, 0.0);
    for (a, b) in parts {
        first_sum += a;
        second_sum += b;
    }
    let epsilon = epsilon_factor(s, variant)?;
    let residue_bound = residue_bound(s, variant, &cfg.weight, &coeffs)?;
    Ok(CriticalEvaluation {
        tau,
        s,
        variant,
        weight: cfg.weight,
        truncation: n,
        table_bound: x,
        value: first_sum + epsilon * second_sum,
        first_sum,
        second_sum,
        epsilon,
        tail_bound,
        residue_bound,
        residue_caveat: tau.abs() < 40.0,
        linear_constant: c_lin,
        kernel_nodes: nodes,
    })
}

// Σ_p |Res_{s=p} Λ|·|G(p−s)|/|p−s| / |q^{s/2}γ(s)| over the poles p ∈ {0, 1/6, 5/6, 1}.
// The residues of ξ at 1 and 5/6 are bounded by 10·p·Σ_{n≤X}|a(n)|/X^p, and
// Λ(s) = Λ(1−s) gives the ones at 0 and 1/6.
fn residue_bound(s: Complex64, variant: Variant, weight: &Weight, coeffs: &[f64]) -> Result<f64> {
    let x = (coeffs.len() - 1).max(1) as f64;
    let total: f64 = coeffs.iter().map(|a| a.abs()).sum();
    let lq = CONDUCTOR.ln();
    let log_res = |p: f64| -> Result<f64> {
        let lam = 0.5 * p * lq + log_gamma_factor(Complex64::new(p, 0.0), variant)?.re;
        Ok(lam + (10.0 * p * total / x.powf(p)).ln())
    };
    let r1 = log_res(1.0)?;
    let r56 = log_res(5.0 / 6.0)?;
    let denom = 0.5 * s.re * lq + log_gamma_factor(s, variant)?.re;
    let mut sum = 0.0;
    for (p, lr) in [(0.0, r1), (1.0 / 6.0, r56), (5.0 / 6.0, r56), (1.0, r1)] {
        let u = Complex64::new(p, 0.0) - s;
        sum += (lr + weight.log_eval(u).re - u.norm().ln() - denom).exp();
    }
    Ok(sum)
}

/// Evaluate `ξ(1/2 + iτ)` at each `τ`, in order.
pub fn zeta_scan(
    taus: &[f64],
    variant: Variant,
    table: &ClassTable,
    cfg: &XiConfig,
) -> Result<Vec<CriticalEvaluation>> {
    taus.iter().map(|&t| xi_critical(t, variant, table, cfg)).collect()
}

pub fn scan_csv_header() -> &'static str {
    "tau,variant,re_xi,im_xi,abs_xi,N,tail_bound,G_tag"
}

pub fn scan_csv_row(e: &CriticalEvaluation) -> String {
    format!(
        "{},{},{:.16e},{:.16e},{:.16e},{},{:.16e},{}",
        e.tau,
        e.variant.name(),
        e.value.re,
        e.value.im,
        e.value.norm(),
        e.truncation,
        e.tail_bound,
        e.weight.tag()
    )
}
