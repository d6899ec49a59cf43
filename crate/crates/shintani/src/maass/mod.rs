//! Even Hecke–Maass cusp forms for `SL₂(ℤ)` and the twisted Shintani sums.
//!
//! A form is stored through its Fourier coefficients,
//!
//! `φ(n_u a_t) = 2t Σ ρ(n) K_{iR}(2πnt²) cos(2πnu)`,
//!
//! where `n_u a_t` is read as the point `u + it²` of the upper half-plane
//! (the same point the [`coords`](crate::coords) module reduces). With
//! `ν = iR` every `K_ν` here is real.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::io::BufRead;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coords::{coords_from_form, Orbit};
use crate::forms::{gauss_reduce, ClassTable, IntegerCubicForm};
use crate::quad::{trapezoid, QuadratureConfig};
use crate::specfun::bessel_k;
use crate::{Error, Result};

/// Hecke screening applied on load when the file declares no tolerance.
pub const DEFAULT_HECKE_TOL: f64 = 1e-3;

/// Fourier data of an even Maass cusp form, normalised by `ρ(1) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MaassForm {
    r: f64,
    // rho[n − 1] = ρ(n)
    rho: Vec<f64>,
    source: String,
    hecke_tol: f64,
    scale: f64,
}

impl MaassForm {
    /// Validate and wrap coefficients `ρ(1), …, ρ(N)`.
    pub fn new(r: f64, rho: Vec<f64>, source: impl Into<String>, hecke_tol: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Validation(format!("spectral parameter R must be positive, got {r}")));
        }
        if rho.len() < 100 {
            return Err(Error::Validation(format!("need at least 100 coefficients, got {}", rho.len())));
        }
        if let Some(n) = rho.iter().position(|v| !v.is_finite()) {
            return Err(Error::Validation(format!("ρ({}) is not finite", n + 1)));
        }
        if (rho[0] - 1.0).abs() > 1e-12 {
            return Err(Error::Validation(format!("normalisation ρ(1) = 1 fails: ρ(1) = {}", rho[0])));
        }
        let f = MaassForm { r, rho, source: source.into(), hecke_tol, scale: 1.0 };
        let (_, _, worst) = f.worst_hecke_residual(f.n_max())?;
        if worst > hecke_tol {
            let (m, n, res) = f.first_hecke_failure(hecke_tol)?.unwrap_or((0, 0, worst));
            return Err(Error::Validation(format!(
                "Hecke relation fails at (m, n) = ({m}, {n}): residual {res:.3e} > {hecke_tol:e} (worst {worst:.3e})"
            )));
        }
        Ok(f)
    }

    /// The same form multiplied by `k`; the coefficients keep `ρ(1) = 1`.
    pub fn scaled(&self, k: f64) -> Self {
        MaassForm { scale: self.scale * k, ..self.clone() }
    }

    /// `R`, with `ν = iR`.
    pub fn spectral_r(&self) -> f64 {
        self.r
    }

    pub fn nu(&self) -> Complex64 {
        Complex64::new(0.0, self.r)
    }

    pub fn n_max(&self) -> usize {
        self.rho.len()
    }

    pub fn rho(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.rho.get(i)).copied()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn hecke_tol(&self) -> f64 {
        self.hecke_tol
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `|ρ(m)ρ(n) − Σ_{d | (m,n)} ρ(mn/d²)|`.
    pub fn hecke_residual(&self, m: usize, n: usize) -> Result<f64> {
        if m == 0 || n == 0 || m.checked_mul(n).map_or(true, |p| p > self.n_max()) {
            return Err(Error::InvalidInput(format!(
                "Hecke residual at ({m}, {n}) needs ρ up to mn, have {}",
                self.n_max()
            )));
        }
        let g = num_integer::gcd(m, n);
        let rhs: f64 = (1..=g).filter(|d| g % d == 0).map(|d| self.rho[m * n / (d * d) - 1]).sum();
        Ok((self.rho[m - 1] * self.rho[n - 1] - rhs).abs())
    }

    /// Largest residual over all `m, n ≥ 2` with `mn ≤ limit`, with its location.
    pub fn worst_hecke_residual(&self, limit: usize) -> Result<(usize, usize, f64)> {
        let limit = limit.min(self.n_max());
        let mut worst = (1, 1, 0.0);
        for m in 2..=limit {
            for n in m..=limit / m {
                let r = self.hecke_residual(m, n)?;
                if r > worst.2 {
                    worst = (m, n, r);
                }
            }
        }
        Ok(worst)
    }

    /// The first pair `(m, n)`, `2 ≤ m ≤ n`, in lexicographic order whose
    /// residual exceeds `tol`.
    pub fn first_hecke_failure(&self, tol: f64) -> Result<Option<(usize, usize, f64)>> {
        let limit = self.n_max();
        for m in 2..=limit {
            for n in m..=limit / m {
                let r = self.hecke_residual(m, n)?;
                if r > tol {
                    return Ok(Some((m, n, r)));
                }
            }
        }
        Ok(None)
    }

    fn term(&self, n: usize, y: f64) -> Result<f64> {
        Ok(self.rho[n - 1] * bessel_k(self.nu(), 2.0 * PI * n as f64 * y)?.re)
    }

    /// `φ(n_u a_t)` from the Fourier expansion, summed until the certified
    /// tail drops below `tol`.
    ///
    /// The tail bound uses `|K_{iR}(x)| ≤ K₀(x) ≤ √(π/2x) e^{−x}` and
    /// `|ρ(n)| ≤ d(n) n^{7/64} ≤ 2 n^{1/2 + 7/64}`.
    pub fn phi_eval(&self, u: f64, t: f64, tol: f64) -> Result<PhiValue> {
        if !(t >= 0.1) || !t.is_finite() || !u.is_finite() {
            return Err(Error::InvalidInput(format!("phi_eval needs t ≥ 0.1, got t = {t}")));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidInput("phi_eval needs a positive tolerance".into()));
        }
        let y = t * t;
        let k = 2.0 * t * self.scale.abs();
        let mut n = 1;
        // the tail after n terms is at most bound(n + 1)/(1 − e^{−2πy})
        let q = 1.0 / (1.0 - (-2.0 * PI * y).exp());
        let tail = |n: usize| {
            let nf = n as f64;
            let x = 2.0 * PI * nf * y;
            k * 2.0 * nf.powf(0.5 + 7.0 / 64.0) * (PI / (2.0 * x)).sqrt() * (-x).exp() * q
        };
        while tail(n) > tol {
            n += 1;
            if n > self.n_max() {
                let mut need = n;
                while tail(need) > tol {
                    need += 1;
                }
                return Err(Error::TooFewCoefficients { have: self.n_max(), need: need - 1 });
            }
        }
        let mut acc = 0.0;
        for m in 1..n {
            acc += self.term(m, y)? * (2.0 * PI * m as f64 * u).cos();
        }
        Ok(PhiValue { value: 2.0 * t * self.scale * acc, tail_bound: tail(n), terms: n - 1 })
    }

    /// `φ` at `x + iy`, evaluated after reducing the point into the
    /// fundamental domain, where the expansion needs a handful of terms.
    pub fn phi_at(&self, x: f64, y: f64) -> Result<f64> {
        if !(y > 0.0) || !y.is_finite() || !x.is_finite() {
            return Err(Error::InvalidInput(format!("phi_at needs a point of the upper half-plane, got {x} + {y}i")));
        }
        let (x, y) = reduce_point(x, y)?;
        Ok(self.phi_eval(x, y.sqrt(), PHI_TOL)?.value)
    }

    /// `max |φ|`, from `2√y Σ |ρ(n) K_{iR}(2πny)|` maximised over a grid of
    /// heights `y ≥ √3/2` and padded by 5%.
    pub fn sup_estimate(&self) -> Result<f64> {
        let mut best: f64 = 0.0;
        let mut y = 3f64.sqrt() / 2.0;
        while y < 8.0 {
            let mut acc = 0.0;
            for n in 1..=self.n_max() {
                let x = 2.0 * PI * n as f64 * y;
                if x > self.r + 60.0 {
                    break;
                }
                acc += self.term(n, y)?.abs();
            }
            best = best.max(2.0 * y.sqrt() * acc);
            y += 0.01;
        }
        Ok(1.05 * best * self.scale.abs())
    }
}

// target for evaluations inside the fundamental domain; |φ| is of size e^{−πR/2}
const PHI_TOL: f64 = 1e-24;

/// A truncated Fourier expansion with its tail certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiValue {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Map `x + iy` into `|x| ≤ 1/2`, `x² + y² ≥ 1`.
pub fn reduce_point(mut x: f64, mut y: f64) -> Result<(f64, f64)> {
    for _ in 0..10_000 {
        x -= x.round();
        let r2 = x * x + y * y;
        if r2 >= 1.0 - 1e-14 {
            return Ok((x, y));
        }
        x = -x / r2;
        y /= r2;
    }
    Err(Error::NoConvergence(format!("reduction of {x} + {y}i did not terminate")))
}

/// Read a coefficient file: `# R=…`, `# parity=even`, `# source=…`,
/// optionally `# hecke_tol=…`, then a header `n,rho` and rows `n,ρ(n)` for
/// `n = 1, 2, …`.
pub fn load_maass_form(path: impl AsRef<Path>) -> Result<MaassForm> {
    let p = path.as_ref();
    let name = p.display().to_string();
    let file = std::fs::File::open(p).map_err(|e| Error::Io(format!("{name}: {e}")))?;
    read_maass_form(std::io::BufReader::new(file), &name)
}

/// [`load_maass_form`] on an open reader; `path` only labels errors.
pub fn read_maass_form(reader: impl BufRead, path: &str) -> Result<MaassForm> {
    let perr = |line: usize, msg: String| Error::Parse { path: path.to_string(), line, msg };
    let (mut r, mut parity, mut source, mut tol) = (None, None, None, DEFAULT_HECKE_TOL);
    let mut rho = Vec::new();
    let mut seen_header = false;
    for (i, line) in reader.lines().enumerate() {
        let ln = i + 1;
        let line = line.map_err(|e| Error::Io(format!("{path}: {e}")))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let (k, v) = meta.trim().split_once('=').ok_or_else(|| perr(ln, format!("expected key=value, got {meta:?}")))?;
            let v = v.trim();
            match k.trim() {
                "R" => r = Some(v.parse::<f64>().map_err(|e| perr(ln, format!("bad R {v:?}: {e}")))?),
                "parity" => parity = Some(v.to_string()),
                "source" => source = Some(v.to_string()),
                "hecke_tol" => tol = v.parse::<f64>().map_err(|e| perr(ln, format!("bad hecke_tol {v:?}: {e}")))?,
                _ => {}
            }
            continue;
        }
        if !seen_header {
            if line.replace(' ', "") != "n,rho" {
                return Err(perr(ln, format!("expected header n,rho, got {line:?}")));
            }
            seen_header = true;
            continue;
        }
        let (n, v) = line.split_once(',').ok_or_else(|| perr(ln, format!("expected n,rho, got {line:?}")))?;
        let n: usize = n.trim().parse().map_err(|e| perr(ln, format!("bad index {n:?}: {e}")))?;
        if n != rho.len() + 1 {
            return Err(perr(ln, format!("expected n = {}, got {n}", rho.len() + 1)));
        }
        let v: f64 = v.trim().parse().map_err(|e| perr(ln, format!("bad coefficient {v:?}: {e}")))?;
        if n == 1 && (v - 1.0).abs() > 1e-12 {
            return Err(perr(ln, format!("normalisation ρ(1) = 1 fails: ρ(1) = {v}")));
        }
        rho.push(v);
    }
    let r = r.ok_or_else(|| perr(0, "missing # R= header".into()))?;
    match parity.as_deref() {
        Some("even") => {}
        Some(other) => return Err(perr(0, format!("only even forms are supported, got parity={other}"))),
        None => return Err(perr(0, "missing # parity= header".into())),
    }
    let source = source.ok_or_else(|| perr(0, "missing # source= header".into()))?;
    if !(tol > 0.0 && tol <= DEFAULT_HECKE_TOL) {
        return Err(perr(0, format!("hecke_tol must lie in (0, {DEFAULT_HECKE_TOL:e}], got {tol}")));
    }
    MaassForm::new(r, rho, source, tol).map_err(|e| match e {
        Error::Validation(m) => Error::Validation(format!("{path}: {m}")),
        e => e,
    })
}

/// Both sides of the convolution identity at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvolutionCheck {
    /// `∫_{G¹} exp(−tr gᵗg) φ(hg^{−1}) dg`.
    pub lhs: f64,
    /// `√π K_ν(2) φ(h)`.
    pub rhs: f64,
    /// `|lhs − rhs|/|rhs|`.
    pub gap: f64,
    pub evaluations: usize,
}

/// Evaluate the convolution of `φ` against `exp(−tr gᵗg)` at `h = n_u a_t`.
///
/// Inverting `g` and using `tr (g gᵗ)^{−1} = tr gᵗg` on `SL₂`, the left side
/// is `∫ exp(−tr gᵗg) φ(hg) dg`. Its integrand is right `K`-invariant, and
/// with `dg = du dt/t³ dθ` (`θ` of total mass 1) it becomes
///
/// `(1/2) ∫_H exp(−(x² + y² + 1)/y) φ(u + t²(x + iy)) dx dy/y²`.
///
/// After `y = e^s`, `x = √y v` the weight is `e^{−v²} e^{−2 cosh s} e^{−s/2}`,
/// which is below `e^{−45}` of its peak outside `|v| ≤ 6.5`, `|s| ≤ 3.8`.
/// The integrand is analytic and negligible at the edges of that rectangle,
/// so nested trapezoidal rules with step halving converge geometrically.
/// The left side is of size `√π |K_ν(2)| sup|φ|`, about `10⁻¹⁰` of the
/// integrand for `R ≈ 14`, so the inner rules work to an absolute target
/// on that scale.
pub fn convolution_eigenvalue_check(phi: &MaassForm, u: f64, t: f64, cfg: &QuadratureConfig) -> Result<ConvolutionCheck> {
    if !(0.5..=2.0).contains(&t) || !u.is_finite() {
        return Err(Error::InvalidInput(format!("convolution check needs t ∈ [0.5, 2], got {t}")));
    }
    cfg.validate()?;
    let kv = bessel_k(phi.nu(), 2.0)?.re;
    let target = cfg.rel_tol * PI.sqrt() * kv.abs() * phi.sup_estimate()?.max(f64::MIN_POSITIVE);
    let t2 = t * t;
    let fail: RefCell<Option<Error>> = RefCell::new(None);
    let evals = RefCell::new(0usize);
    let record = |e: Error| {
        fail.borrow_mut().get_or_insert(e);
        Complex64::new(f64::NAN, 0.0)
    };
    let outer = |s: f64| {
        let y = s.exp();
        let w = (-2.0 * s.cosh() - 0.5 * s).exp();
        if w * phi.scale.abs() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let inner_cfg = QuadratureConfig { abs_tol: 0.1 * target / w, rel_tol: 2e-14, ..*cfg };
        let inner = |v: f64| match phi.phi_at(u + t2 * y.sqrt() * v, t2 * y) {
            Ok(p) => Complex64::new((-v * v).exp() * p, 0.0),
            Err(e) => record(e),
        };
        match trapezoid(inner, -6.5, 6.5, 0.25, &inner_cfg) {
            Ok(r) => {
                *evals.borrow_mut() += r.evaluations;
                r.value * w
            }
            Err(e) => record(e),
        }
    };
    let outer_cfg = QuadratureConfig { abs_tol: target, ..*cfg };
    let res = trapezoid(outer, -3.8, 3.8, 0.2, &outer_cfg);
    if let Some(e) = fail.into_inner() {
        return Err(e);
    }
    let lhs = 0.5 * res?.value.re;
    let rhs = PI.sqrt() * kv * phi.phi_at(u, t2)?;
    Ok(ConvolutionCheck { lhs, rhs, gap: (lhs - rhs).abs() / rhs.abs(), evaluations: evals.into_inner() })
}

/// A partial sum of `ℒ^±(s, φ) = Σ φ(g_f)/|Stab f| · |Disc f|^{−s}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistedSum {
    pub s: Complex64,
    pub orbit: Orbit,
    /// Classes with `|Disc| ≤ n` are summed.
    pub n: u64,
    pub value: Complex64,
    /// `sup|φ| · C n^{1−σ} σ/(σ−1)`, from `Σ_{|Disc| ≤ x} 1/|Stab| ≤ C x`.
    pub tail_estimate: f64,
    pub classes: usize,
}

/// `φ(g_f)` for the form `f`: `φ` at the point `u + it²` of `g_f`.
pub fn phi_of_form(phi: &MaassForm, f: &crate::forms::RealCubicForm) -> Result<f64> {
    let h = coords_from_form(f)?;
    phi.phi_at(h.u, h.t * h.t)
}

/// [`phi_of_form`] after an exact reduction of `f`, so that every
/// representative of a class gives the same value to rounding.
pub fn phi_of_integer_form(phi: &MaassForm, f: &IntegerCubicForm) -> Result<f64> {
    let (reduced, _) = gauss_reduce(f)?;
    phi_of_form(phi, &reduced.to_real())
}

/// Sum over the classes of `table` with `|Disc| ≤ n` in `V_±` (`Disc > 0`
/// for [`Orbit::Plus`]). Requires `Re s ≥ 1.2`.
pub fn twisted_partial_sum(s: Complex64, table: &ClassTable, phi: &MaassForm, n: u64, orbit: Orbit) -> Result<TwistedSum> {
    if !(s.re >= 1.2) {
        return Err(Error::InvalidInput(format!("twisted sums need Re s ≥ 1.2, got {s}")));
    }
    if n > table.bound() {
        return Err(Error::TableTooSmall { have: table.bound(), need: n });
    }
    if table.records().is_empty() && table.total_classes(n) > 0 {
        return Err(Error::InvalidInput("twisted sums need class representatives; the table has counts only".into()));
    }
    let want = if orbit == Orbit::Plus { 1 } else { -1 };
    let recs: Vec<_> = table.records().iter().filter(|r| r.disc.signum() == want && r.disc.unsigned_abs() <= n).collect();
    let terms: Vec<Complex64> = recs
        .par_iter()
        .map(|r| {
            let p = phi_of_integer_form(phi, &r.representative)?;
            let d = r.disc.unsigned_abs() as f64;
            Ok((-s * d.ln()).exp() * (p / r.stab_order as f64))
        })
        .collect::<Result<_>>()?;
    let value = terms.iter().sum();

    let weights: Vec<f64> = (0..=n)
        .map(|k| if orbit == Orbit::Plus { table.w_plus(k) } else { table.w_minus(k) })
        .collect();
    let c = crate::afe::linear_growth_constant(&weights);
    let sigma = s.re;
    let tail_estimate = phi.sup_estimate()? * c * (n.max(1) as f64).powf(1.0 - sigma) * sigma / (sigma - 1.0);
    Ok(TwistedSum { s, orbit, n, value, tail_estimate, classes: recs.len() })
}

pub fn twisted_csv_header() -> &'static str {
    "s_re,s_im,N,re,im,tail_est"
}

pub fn twisted_csv_row(t: &TwistedSum) -> String {
    format!("{},{},{},{:.16e},{:.16e},{:.16e}", t.s.re, t.s.im, t.n, t.value.re, t.value.im, t.tail_estimate)
}
