//! Sampled sweeps for the coordinate estimates that carry unspecified constants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{coords_from_form, form_from_coords, log_disc_partial, HomogeneousCoords, Orbit};
use crate::forms::{a_t, mat_mul, n_u, RealCubicForm};
use crate::Result;

/// Draw `v` with `3a² + b² + c² + 3d² ≤ c_bound` and `|Disc(v)| ≥ 1`.
pub fn sample_ball_b(rng: &mut impl Rng, c_bound: f64) -> RealCubicForm {
    let ra = (c_bound / 3.0).sqrt();
    let rb = c_bound.sqrt();
    loop {
        let v = RealCubicForm([
            rng.gen_range(-ra..=ra),
            rng.gen_range(-rb..=rb),
            rng.gen_range(-rb..=rb),
            rng.gen_range(-ra..=ra),
        ]);
        let [a, b, c, d] = v.0;
        if 3.0 * a * a + b * b + c * c + 3.0 * d * d <= c_bound && v.discriminant().abs() >= 1.0 {
            return v;
        }
    }
}

fn nat(u: f64, t: f64, lambda: f64, v: &RealCubicForm) -> RealCubicForm {
    v.act(&mat_mul(&n_u(u), &a_t(t))).scale(lambda)
}

#[derive(Clone, Debug)]
pub struct DerivativeFloorReport {
    pub points: usize,
    /// `min` over the grid of `max_D |D log|Disc|| · t⁹ λ³`, `D` a pure third derivative.
    pub min_scaled: f64,
    /// `(u, t, λ)` where the minimum is attained.
    pub argmin: (f64, f64, f64),
}

/// Scan `f = n_u a_t d_λ · f₀` over the grid, `f₀` drawn from `B(c_bound)`.
pub fn derivative_floor(
    us: &[f64],
    ts: &[f64],
    lambdas: &[f64],
    forms_per_point: usize,
    c_bound: f64,
    seed: u64,
) -> Result<DerivativeFloorReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DerivativeFloorReport { points: 0, min_scaled: f64::INFINITY, argmin: (0.0, 0.0, 0.0) };
    for &u in us {
        for &t in ts {
            for &lambda in lambdas {
                for _ in 0..forms_per_point {
                    let f = nat(u, t, lambda, &sample_ball_b(&mut rng, c_bound));
                    let mut best = 0.0f64;
                    for k in 0..4 {
                        let mut alpha = [0; 4];
                        alpha[k] = 3;
                        best = best.max(log_disc_partial(alpha, &f)?.abs());
                    }
                    let scaled = best * t.powi(9) * lambda.powi(3);
                    report.points += 1;
                    if scaled < report.min_scaled {
                        report.min_scaled = scaled;
                        report.argmin = (u, t, lambda);
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct SpreadReport {
    pub samples: usize,
    pub min: f64,
    pub max: f64,
}

impl SpreadReport {
    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

/// Empirical range of `log t(f) − log t` for `f = n_u a_t · v`, `v ∈ B(c_bound)`.
pub fn log_t_spread(samples: usize, c_bound: f64, seed: u64) -> Result<SpreadReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SpreadReport { samples, min: f64::INFINITY, max: f64::NEG_INFINITY };
    for _ in 0..samples {
        let v = sample_ball_b(&mut rng, c_bound);
        let u = rng.gen_range(-2.0..2.0);
        let t = (rng.gen_range(-3.0f64..3.0)).exp();
        let f = nat(u, t, 1.0, &v);
        let diff = coords_from_form(&f)?.t.ln() - t.ln();
        rep.min = rep.min.min(diff);
        rep.max = rep.max.max(diff);
    }
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub c1: f64,
    pub c2: f64,
    pub samples: usize,
    pub violations: usize,
    /// Largest observed `max(t̃/t_f, t_f/t̃)`.
    pub worst_factor: f64,
}

/// Perturb `f` with `λ_f ≥ 1`, `t_f ≥ 2` by `δ` of Euclidean norm `c2·λ_f/t_f³`
/// and count how often `t(f + δ)` leaves `[t_f/c1, c1·t_f]`.
pub fn t_stability_sweep(c1: f64, c2: f64, samples: usize, seed: u64) -> StabilityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = StabilityReport { c1, c2, samples, violations: 0, worst_factor: 1.0 };
    for i in 0..samples {
        let orbit = if i % 2 == 0 { Orbit::Plus } else { Orbit::Minus };
        let t = 2f64.powf(rng.gen_range(1.0..4.0));
        let lambda = 5f64.powf(rng.gen_range(0.0..2.0));
        let h = HomogeneousCoords {
            u: rng.gen_range(-0.5..0.5),
            t,
            theta: rng.gen_range(0.0..1.0),
            lambda,
            orbit,
        };
        let f = form_from_coords(&h);
        let dir: [f64; 4] = [0; 4].map(|_| rng.gen_range(-1.0..1.0));
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let r = c2 * lambda / t.powi(3) / norm;
        let g = f.add(&RealCubicForm(dir.map(|x| x * r)));
        let factor = match coords_from_form(&g) {
            Ok(c) if g.discriminant().signum() == f.discriminant().signum() => (c.t / t).max(t / c.t),
            _ => f64::INFINITY,
        };
        rep.worst_factor = rep.worst_factor.max(factor);
        if factor > c1 {
            rep.violations += 1;
        }
    }
    rep
}

/// Largest candidate `C₂` whose sweep shows no violations for the given `C₁`.
pub fn calibrate_c2(c1: f64, candidates: &[f64], samples: usize, seed: u64) -> Option<f64> {
    candidates
        .iter()
        .copied()
        .filter(|&c2| t_stability_sweep(c1, c2, samples, seed).violations == 0)
        .fold(None, |m: Option<f64>, c| Some(m.map_or(c, |x| x.max(c))))
}
