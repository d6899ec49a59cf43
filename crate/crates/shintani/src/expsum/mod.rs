//! Exponential sums and averages of `|Disc|^{−iτ}`.
//!
//! Van der Corput's inequality and the linear-phase bound are implemented as
//! stated. The two averaging experiments replace the lattice ball of the
//! estimates by the continuous ball of the same radius: the cancellation
//! comes from the same third-order (generic) or first-order (`a = 0`) phase,
//! and the lattice regime needs discriminants far beyond what can be sampled.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coords::{coords_from_form, form_from_coords, log_disc_partial, HomogeneousCoords, Orbit, T_MIN};
use crate::forms::RealCubicForm;
use crate::{Error, Result};

/// Both sides of van der Corput's inequality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VdcReport {
    /// `|Σ c_n|²`.
    pub lhs: f64,
    /// `(N+H)/(H+1) Σ|c_n|² + 2(N+H)/(H+1) Σ_{h≤H} (1 − h/(H+1)) |Σ_{n≤N−h} c_{n+h} c̄_n|`.
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluate both sides of van der Corput's inequality for `1 ≤ H < N`.
///
/// ```
/// use shintani::expsum::vdc_inequality;
/// use shintani::Complex64;
/// let one = Complex64::new(1.0, 0.0);
/// let r = vdc_inequality(&[one, one], 1).unwrap();
/// assert_eq!((r.lhs, r.rhs), (4.0, 4.5));
/// ```
pub fn vdc_inequality(seq: &[Complex64], h: usize) -> Result<VdcReport> {
    let n = seq.len();
    if !(h >= 1 && h < n) {
        return Err(Error::InvalidInput(format!("van der Corput needs 1 ≤ H < N, got H={h}, N={n}")));
    }
    let total: Complex64 = seq.iter().sum();
    let lhs = total.norm_sqr();
    let (nf, hf) = (n as f64, h as f64);
    let k = (nf + hf) / (hf + 1.0);
    let diag: f64 = seq.iter().map(|c| c.norm_sqr()).sum();
    let mut off = 0.0;
    for s in 1..=h {
        let corr: Complex64 = (0..n - s).map(|i| seq[i + s] * seq[i].conj()).sum();
        off += (1.0 - s as f64 / (hf + 1.0)) * corr.norm();
    }
    let rhs = k * diag + 2.0 * k * off;
    // both sides are sums of O(N²) rounded terms
    let slack = 8.0 * f64::EPSILON * (n as f64) * (rhs + lhs);
    Ok(VdcReport { lhs, rhs, holds: lhs <= rhs + slack })
}

/// `‖α‖`, the distance from `α` to the nearest integer.
pub fn dist_to_integer(alpha: f64) -> f64 {
    (alpha - alpha.round()).abs()
}

/// `Σ_{j=1}^N e^{2πiαj}` in closed form, and `min(N, 1/‖α‖)`.
pub fn linear_phase_sum(alpha: f64, n: u64) -> Result<(Complex64, f64)> {
    if n == 0 {
        return Err(Error::InvalidInput("linear_phase_sum needs N ≥ 1".into()));
    }
    let nf = n as f64;
    let d = dist_to_integer(alpha);
    let bound = if d == 0.0 { nf } else { nf.min(1.0 / d) };
    let frac = alpha - alpha.round();
    if frac == 0.0 {
        return Ok((Complex64::new(nf, 0.0), bound));
    }
    // e^{πi(N+1)α} sin(πNα)/sin(πα), with α reduced mod 1 first
    let mag = (PI * nf * frac).sin() / (PI * frac).sin();
    let phase = PI * ((nf + 1.0) * frac).rem_euclid(2.0);
    Ok((Complex64::from_polar(mag, phase), bound))
}

fn multi_indices(max_order: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for k in 1..=max_order {
        for a in 0..=k {
            for b in 0..=k - a {
                for c in 0..=k - a - b {
                    out.push([a, b, c, k - a - b - c]);
                }
            }
        }
    }
    out
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Constant `K` in `|e^{iF(y)} − |Disc(f+y)|^{−iτ}| ≤ K δ ‖y‖∞⁴`. The fourth-order
/// remainder is bounded by `τ Σ_{|α|=4} |D^α log|Disc(f)||/α! · ‖y‖∞⁴`, and that
/// sum stays below `1.04·10⁴ δ` over forms sampled across the Siegel domain
/// with `t ≤ 3`; the largest values occur near the bottom `t ≈ t_min`.
pub const TAYLOR_ENVELOPE: f64 = 1.2e4;

/// The degree-3 Taylor model `F(y) = −τ Σ_{|α|≤3} D^α log|Disc(f)| y^α/α!` of the
/// phase of `|Disc(f+y)|^{−iτ}`.
#[derive(Clone, Debug)]
pub struct PhaseModel {
    pub form: RealCubicForm,
    pub tau: f64,
    /// `−τ log|Disc(f)|`.
    pub constant: f64,
    /// `(α, −τ D^α log|Disc(f)|/α!)` for `0 < |α| ≤ 3`.
    pub terms: Vec<([u32; 4], f64)>,
    /// `δ = τ T¹²/|Disc(f)|` with `T = max(t_f, 1)`: the scale of the fourth derivatives.
    pub delta: f64,
}

impl PhaseModel {
    /// `F(y)`.
    pub fn eval(&self, y: &[f64; 4]) -> f64 {
        self.constant + self.correction(y)
    }

    // F(y) − F(0)
    fn correction(&self, y: &[f64; 4]) -> f64 {
        self.terms.iter().map(|(al, c)| c * (0..4).map(|i| y[i].powi(al[i] as i32)).product::<f64>()).sum()
    }

    /// `K δ ‖y‖∞⁴` with `K` = [`TAYLOR_ENVELOPE`].
    pub fn envelope(&self, y: &[f64; 4]) -> f64 {
        TAYLOR_ENVELOPE * self.delta * y.iter().fold(0.0f64, |a, b| a.max(b.abs())).powi(4)
    }

    /// `|exp(iF(y)) − |Disc(f+y)|^{−iτ}|`, computed from the phase difference
    /// so that the large common phase `τ log|Disc(f)|` cancels exactly.
    pub fn error_at(&self, y: &[f64; 4]) -> Result<f64> {
        let g = RealCubicForm(std::array::from_fn(|i| self.form.0[i] + y[i]));
        let d0 = self.form.discriminant();
        let d1 = g.discriminant();
        if d1 == 0.0 || d1.signum() != d0.signum() {
            return Err(Error::Singular(format!("f + y crosses the singular set at y = {y:?}")));
        }
        let exact = -self.tau * ((d1 - d0) / d0).ln_1p();
        let diff = self.correction(y) - exact;
        Ok(2.0 * (0.5 * diff).sin().abs())
    }
}

/// Build the phase model of `f` at `τ`.
pub fn phase_taylor_model(f: &RealCubicForm, tau: f64) -> Result<PhaseModel> {
    let disc = f.discriminant();
    if disc == 0.0 || !disc.is_finite() {
        return Err(Error::Singular(format!("phase model of a singular form {:?}", f.0)));
    }
    let mut terms = Vec::new();
    for al in multi_indices(3) {
        let fact: f64 = al.iter().map(|&k| factorial(k)).product();
        terms.push((al, -tau * log_disc_partial(al, f)? / fact));
    }
    let t = coords_from_form(f)?.t.max(1.0);
    Ok(PhaseModel { form: *f, tau, constant: -tau * disc.abs().ln(), terms, delta: tau * t.powi(12) / disc.abs() })
}

/// Which averaging experiment a parameter set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Average over the 4-dimensional ∞-ball around a generic form.
    Generic,
    /// Average over the `d`-coefficient line of a form with `a = 0`.
    Reducible,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Generic => "generic",
            Mode::Reducible => "reducible",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Mode::Generic),
            "reducible" => Ok(Mode::Reducible),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?}, expected generic or reducible"))),
        }
    }
}

/// Parameters of an averaging experiment, as the estimates choose them.
#[derive(Clone, Debug)]
pub struct ExperimentParams {
    pub mode: Mode,
    /// Discriminant scale `Y`.
    pub y: f64,
    pub tau: f64,
    /// Cusp height `T₁` (generic) or `T₂` (reducible).
    pub t: f64,
    /// Radius of the averaging ball or segment.
    pub r: f64,
    /// Spacing `R₁ ≍ 1/(R α^{2/3})`.
    pub r1: f64,
    /// Sum length `N = 2R/R₁`.
    pub n: f64,
    /// First differencing length, `H₁³ = 1/(α R₁³)`.
    pub h1: f64,
    /// `H₂ = H₁²`.
    pub h2: f64,
    /// Scale of the leading derivative: the third derivatives `τ/(T⁹Y^{3/4})`
    /// (generic) or the first derivative `1/(T³Y^{1/4})` (reducible).
    pub alpha: f64,
    /// Scale of the remainder: fourth derivatives `τT¹²/Y` (generic) or
    /// second derivatives `1/(T⁶Y^{1/2})` (reducible).
    pub delta: f64,
    pub seed: u64,
    pub samples: usize,
    /// Hypotheses of the estimate that these parameters violate.
    pub violations: Vec<String>,
}

impl ExperimentParams {
    /// The bound the estimate predicts, up to its implied constant:
    /// `T^{8/3}τ^{−1/27}(log τ)^{4/9}` or `Y^{1/2}/(τ^{1/3}T²)`.
    pub fn predicted_bound(&self) -> f64 {
        match self.mode {
            Mode::Generic => self.t.powf(8.0 / 3.0) * self.tau.powf(-1.0 / 27.0) * self.tau.ln().powf(4.0 / 9.0),
            Mode::Reducible => self.y.sqrt() / (self.tau.cbrt() * self.t * self.t),
        }
    }
}

/// Fill in the parameter recipe for `(Y, τ, T)`; hypotheses that fail are
/// listed in `violations`, not refused.
///
/// ```
/// use shintani::expsum::{recipe_parameters, Mode};
/// let p = recipe_parameters(1e12, 1e4, 2.0, Mode::Generic).unwrap();
/// let want = 1e3 / (1e4f64.powf(7.0 / 27.0) * 2f64.powf(7.0 / 3.0));
/// assert!((p.r - want).abs() < 1e-12 * want);
/// ```
pub fn recipe_parameters(y: f64, tau: f64, t: f64, mode: Mode) -> Result<ExperimentParams> {
    if !(y > 0.0 && tau > 0.0 && t > 0.0) || !(y.is_finite() && tau.is_finite() && t.is_finite()) {
        return Err(Error::InvalidInput(format!("recipe needs positive Y, τ, T; got {y}, {tau}, {t}")));
    }
    let mut violations = Vec::new();
    let p = match mode {
        Mode::Generic => {
            let r = y.powf(0.25) / (tau.powf(7.0 / 27.0) * t.powf(7.0 / 3.0));
            let alpha = tau / (t.powi(9) * y.powf(0.75));
            let delta = tau * t.powi(12) / y;
            if y < tau.powf(4.0 / 3.0) * t.powi(12) {
                violations.push(format!("Y ≫ τ^(4/3)T^12 fails: Y = {y:e} < {:e}", tau.powf(4.0 / 3.0) * t.powi(12)));
            }
            if t > y.powf(1.0 / 84.0) {
                violations.push(format!("T = o(Y^(1/84)) fails: T = {t} > {:.4}", y.powf(1.0 / 84.0)));
            }
            if delta * r.powi(4) >= 1.0 {
                violations.push(format!("δR⁴ = o(1) fails: δR⁴ = {:.3}", delta * r.powi(4)));
            }
            if alpha * r.powi(3) < 1.0 {
                violations.push(format!("αR³ ≫ 1 fails: αR³ = {:.3e}", alpha * r.powi(3)));
            }
            let r1 = 1.0 / (r * alpha.powf(2.0 / 3.0));
            let h1 = (1.0 / (alpha * r1.powi(3))).cbrt();
            ExperimentParams {
                mode,
                y,
                tau,
                t,
                r,
                r1,
                n: 2.0 * r / r1,
                h1,
                h2: h1 * h1,
                alpha,
                delta,
                seed: 0,
                samples: 0,
                violations,
            }
        }
        Mode::Reducible => {
            let r = t * t * y.sqrt() / tau.powf(2.0 / 3.0);
            let alpha = 1.0 / (t.powi(3) * y.powf(0.25));
            let delta = 1.0 / (t.powi(6) * y.sqrt());
            let lin = tau * r * r * delta;
            if lin >= 1.0 {
                violations.push(format!("R² = o(T^6 Y^(1/2)/τ) fails: τR²/(T^6 Y^(1/2)) = {lin:.3}"));
            }
            if y < tau {
                violations.push(format!("Y = {y:e} below τ = {tau:e}"));
            }
            ExperimentParams {
                mode,
                y,
                tau,
                t,
                r,
                r1: 1.0,
                n: 2.0 * r,
                h1: 0.0,
                h2: 0.0,
                alpha,
                delta,
                seed: 0,
                samples: 0,
                violations,
            }
        }
    };
    Ok(p)
}

/// A Monte Carlo average with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseAverage {
    pub value: Complex64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl PhaseAverage {
    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }
}

/// Independent Monte Carlo streams; fixed so results do not depend on the thread count.
pub const SHARDS: u64 = 64;

/// `E_{y ∈ B_R}[|Disc(f+y)|^{−iτ}]` over the continuous ∞-ball `‖y‖∞ ≤ R`, by
/// Monte Carlo with `samples` points from `seed`. Fails when the standard
/// error exceeds `max_stderr`.
pub fn disc_phase_average(
    f: &RealCubicForm,
    r: f64,
    tau: f64,
    samples: usize,
    seed: u64,
    max_stderr: f64,
) -> Result<PhaseAverage> {
    let d0 = f.discriminant();
    if !(d0.abs() >= 1.0) {
        return Err(Error::InvalidInput(format!("disc_phase_average needs |Disc(f)| ≥ 1, got {d0}")));
    }
    if !(r > 0.0) || samples < 2 {
        return Err(Error::InvalidInput("disc_phase_average needs R > 0 and at least 2 samples".into()));
    }
    let per = samples.div_ceil(SHARDS as usize);
    let shards: Vec<(Complex64, f64, usize)> = (0..SHARDS)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let count = per.min(samples.saturating_sub(k as usize * per));
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sq = 0.0;
            let mut used = 0;
            for _ in 0..count {
                let g = RealCubicForm(std::array::from_fn(|i| f.0[i] + rng.gen_range(-r..=r)));
                let d = g.discriminant();
                if d == 0.0 {
                    continue;
                }
                let z = Complex64::from_polar(1.0, -tau * d.abs().ln());
                sum += z;
                sq += z.norm_sqr();
                used += 1;
            }
            (sum, sq, used)
        })
        .collect();
    let (mut sum, mut sq, mut used) = (Complex64::new(0.0, 0.0), 0.0, 0usize);
    for (s, q, u) in shards {
        sum += s;
        sq += q;
        used += u;
    }
    let nf = used as f64;
    let mean = sum / nf;
    let var = ((sq - nf * mean.norm_sqr()) / (nf - 1.0)).max(0.0);
    let stderr = (var / nf).sqrt();
    if stderr > max_stderr {
        return Err(Error::NoConvergence(format!(
            "standard error {stderr:.3e} with {used} samples exceeds {max_stderr:e}; about {} samples needed",
            (var / (max_stderr * max_stderr)).ceil()
        )));
    }
    Ok(PhaseAverage { value: mean, stderr, samples: used, seed })
}

/// A form with `|Disc| = Y` and `t ∈ [t_min, T]`, `|u| ≤ 1/2`, random `θ` and orbit.
pub fn sample_generic_form(rng: &mut impl Rng, y: f64, t_max: f64) -> Result<RealCubicForm> {
    let orbit = if rng.gen_bool(0.5) { Orbit::Plus } else { Orbit::Minus };
    let t = if t_max > T_MIN { rng.gen_range(T_MIN..=t_max) } else { t_max };
    let h = HomogeneousCoords::new(
        rng.gen_range(-0.5..=0.5),
        t,
        rng.gen_range(0.0..orbit.theta_period()),
        y.powf(0.25),
        orbit,
    )?;
    Ok(form_from_coords(&h))
}

/// A form `(0, b, c, d)` with `b = Y^{1/4}/T`, `|c| ≤ b`, random sign and
/// `|Disc| = Y`, so that `∂_d log|Disc|` has size `4/(T³Y^{1/4})`.
pub fn sample_reducible_form(rng: &mut impl Rng, y: f64, t: f64) -> Result<RealCubicForm> {
    if !(y > 0.0 && t > 0.0 && y.is_finite() && t.is_finite()) {
        return Err(Error::InvalidInput(format!("sample_reducible_form needs positive Y, T; got {y}, {t}")));
    }
    let b = y.powf(0.25) / t;
    let c = rng.gen_range(-1.0..=1.0) * b;
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let d = (b * b * c * c - sign * y) / (4.0 * b * b * b);
    Ok(RealCubicForm([0.0, b, c, d]))
}

/// `E_{|x| ≤ R}[|Disc(f + (0,0,0,x))|^{−iτ}]` for `a = 0`.
///
/// With `a = 0` the discriminant `b²c² − 4b³(d + x)` is linear in `x`, and
/// `sign(L)|L|^{1−iτ}/(L′(1−iτ))` is an antiderivative of `|L|^{−iτ}` on the
/// whole segment, across the zero of `L` included. The average is evaluated
/// from it exactly.
pub fn reducible_line_average(f: &RealCubicForm, r: f64, tau: f64) -> Result<Complex64> {
    let [a, b, c, d] = f.0;
    if a != 0.0 {
        return Err(Error::InvalidInput(format!("reducible_line_average needs a = 0, got a = {a}")));
    }
    if b == 0.0 || !(f.discriminant().abs() >= 1.0) {
        return Err(Error::InvalidInput("reducible_line_average needs b ≠ 0 and |Disc(f)| ≥ 1".into()));
    }
    if !(r > 0.0) {
        return Err(Error::InvalidInput("reducible_line_average needs R > 0".into()));
    }
    let slope = -4.0 * b * b * b;
    let l = |x: f64| b * b * c * c - 4.0 * b * b * b * (d + x);
    let k = Complex64::new(1.0, -tau);
    let anti = |x: f64| {
        let v = l(x);
        if v == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        (k * v.abs().ln()).exp() * v.signum() / (k * slope)
    };
    Ok((anti(r) - anti(-r)) / (2.0 * r))
}

pub fn experiment_csv_header() -> &'static str {
    "mode,Y,tau,T,R,samples,seed,re_avg,im_avg,abs_avg,stderr"
}

pub fn experiment_csv_row(p: &ExperimentParams, avg: Complex64, samples: usize, stderr: f64) -> String {
    format!(
        "{},{:e},{:e},{},{:e},{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
        p.mode.name(),
        p.y,
        p.tau,
        p.t,
        p.r,
        samples,
        p.seed,
        avg.re,
        avg.im,
        avg.norm(),
        stderr
    )
}
