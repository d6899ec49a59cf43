//! `shintani`: class enumeration, critical-line scans, consistency checks,
//! exponential-sum experiments and Maass twists from the command line.
//!
//! Every command writes its CSV to `--out` and a JSON sidecar next to it
//! (`<out>.json`). Exit status is 0 on success, 1 when a check fails or the
//! computation cannot be carried out, 2 on bad usage.

mod selftest;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use shintani::afe::{scan_csv_header, scan_csv_row, xi_critical, zeta_scan, Variant, Weight, XiConfig};
use shintani::coords::Orbit;
use shintani::expsum::{
    disc_phase_average, experiment_csv_header, experiment_csv_row, recipe_parameters, reducible_line_average,
    sample_generic_form, sample_reducible_form, Mode,
};
use shintani::forms::{dirichlet_coefficients, enumerate_classes, ClassTable, CoefficientVariant};
use shintani::maass::{load_maass_form, twisted_csv_header, twisted_csv_row, twisted_partial_sum};
use shintani::Complex64;

/// Directory searched for relative input files that do not exist as given.
const DATA_DIR_VAR: &str = "SHINTANI_DATA_DIR";

#[derive(Parser, Debug)]
#[command(name = "shintani", version, about = "Binary cubic form classes and Shintani zeta functions")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    threads: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate class representatives for 0 < |Disc| ≤ X.
    Enumerate {
        #[arg(long = "X", value_parser = clap::value_parser!(u64).range(1..=50_000_000))]
        x: u64,
        #[arg(long, default_value = "classes.csv")]
        out: PathBuf,
    },
    /// Dirichlet coefficients a(n), n ≤ X.
    Coeffs {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_enum, default_value_t = CoeffVariant::Add)]
        variant: CoeffVariant,
        #[arg(long, default_value = "coeffs.csv")]
        out: PathBuf,
    },
    /// ξ(1/2 + iτ) on a grid of τ.
    ZetaScan {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_enum, default_value_t = AfeVariant::Add)]
        variant: AfeVariant,
        #[arg(long, allow_hyphen_values = true)]
        tau_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau_max: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        /// Smoothing weight, `cospower:A`, `cospower(A)` or `gaussian`.
        #[arg(long = "G", default_value = "cospower:24", value_parser = parse_weight)]
        g: Weight,
        /// Absolute target for the truncation tail.
        #[arg(long, default_value_t = 1e-8)]
        tail_tol: f64,
        /// Fixed truncation length instead of the certified one.
        #[arg(long)]
        truncation: Option<u64>,
        #[arg(long, default_value = "scan.csv")]
        out: PathBuf,
    },
    /// Weight independence and realness of Λ on the critical line.
    FeCheck {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, num_args = 1.., default_values_t = [40.0])]
        tau: Vec<f64>,
        #[arg(long, value_enum, default_value_t = FeVariant::Both)]
        variant: FeVariant,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value = "cospower:24", value_parser = parse_weight)]
        g1: Weight,
        #[arg(long, default_value = "cospower:16", value_parser = parse_weight)]
        g2: Weight,
        #[arg(long, default_value = "fe-check.csv")]
        out: PathBuf,
    },
    /// Discriminant phase averages at the recipe radius.
    Vdc {
        #[arg(long, value_enum, default_value_t = VdcMode::Generic)]
        mode: VdcMode,
        #[arg(long = "Y")]
        y: f64,
        #[arg(long)]
        tau: f64,
        /// Cusp height T₁ (generic) or T₂ (reducible).
        #[arg(long = "T")]
        t: f64,
        /// Override the recipe radius.
        #[arg(long = "R")]
        r: Option<f64>,
        /// Number of base forms.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        forms: u64,
        #[arg(long, default_value_t = 40_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-2)]
        max_stderr: f64,
        #[arg(long, default_value = "vdc.csv")]
        out: PathBuf,
    },
    /// Partial sums of the Maass-twisted zeta function.
    Twist {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s_im: f64,
        /// Coefficient file; relative paths fall back to the data directory.
        #[arg(long, default_value = "maass_even_1.csv")]
        phi: PathBuf,
        /// Partial-sum lengths N (the table is enumerated to the largest).
        #[arg(long = "N", num_args = 1.., default_values_t = [50_000u64, 100_000])]
        n: Vec<u64>,
        #[arg(long, value_enum, default_value_t = TwistOrbit::Both)]
        orbit: TwistOrbit,
        #[arg(long, default_value = "twist.csv")]
        out: PathBuf,
    },
    /// Quick property checks of the special functions, forms and coordinates.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "selftest.csv")]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Enumerate classes up to this bound.
    #[arg(long = "X", conflicts_with = "table", value_parser = clap::value_parser!(u64).range(1..=50_000_000))]
    x: Option<u64>,
    /// Read class counts from a CSV written by `enumerate`.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffVariant {
    Plus,
    Minus,
    Add,
    Sub,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AfeVariant {
    Add,
    Sub,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FeVariant {
    Add,
    Sub,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VdcMode {
    Generic,
    Reducible,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TwistOrbit {
    Plus,
    Minus,
    Both,
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse::<Weight>().map_err(|e| e.to_string())
}

/// Why a command stopped.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<shintani::Error> for Failure {
    fn from(e: shintani::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(format!("i/o: {e}"))
    }
}

type CmdResult = Result<Report, Failure>;

/// What a command hands back for the sidecar.
struct Report {
    params: Value,
    results: Value,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads.map(|t| t as usize).unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    });
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        eprintln!("error: thread pool: {e}");
        return ExitCode::from(1);
    }
    let (name, out) = command_name_and_out(&cli.command);
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let clock = Instant::now();
    let result = run(&cli.command, &out);
    let elapsed = clock.elapsed().as_secs_f64();
    match result {
        Ok(report) => {
            let meta = json!({
                "command": name,
                "version": env!("CARGO_PKG_VERSION"),
                "threads": threads,
                "params": report.params,
                "results": report.results,
                "passed": report.passed,
                "output": out.display().to_string(),
                "started_unix": started,
                "elapsed_s": elapsed,
            });
            if let Err(e) = write_sidecar(&out, &meta) {
                eprintln!("error: writing metadata: {e}");
                return ExitCode::from(1);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn command_name_and_out(c: &Command) -> (&'static str, PathBuf) {
    match c {
        Command::Enumerate { out, .. } => ("enumerate", out.clone()),
        Command::Coeffs { out, .. } => ("coeffs", out.clone()),
        Command::ZetaScan { out, .. } => ("zeta-scan", out.clone()),
        Command::FeCheck { out, .. } => ("fe-check", out.clone()),
        Command::Vdc { out, .. } => ("vdc", out.clone()),
        Command::Twist { out, .. } => ("twist", out.clone()),
        Command::Selftest { out, .. } => ("selftest", out.clone()),
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write_sidecar(out: &Path, meta: &Value) -> std::io::Result<()> {
    let mut f = BufWriter::new(File::create(sidecar_path(out))?);
    serde_json::to_writer_pretty(&mut f, meta)?;
    writeln!(f)?;
    f.flush()
}

fn write_csv(out: &Path, header: &str, rows: &[String]) -> std::io::Result<()> {
    let mut f = BufWriter::new(File::create(out)?);
    writeln!(f, "{header}")?;
    for r in rows {
        writeln!(f, "{r}")?;
    }
    f.flush()
}

/// `path` as given if it exists, else under `$SHINTANI_DATA_DIR` (default `data`).
fn resolve_input(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    let dir = std::env::var_os(DATA_DIR_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("data"));
    dir.join(path)
}

fn load_table(args: &TableArgs, default_x: u64) -> Result<(ClassTable, Value), Failure> {
    match (&args.table, args.x) {
        (Some(p), _) => {
            let p = resolve_input(p);
            let f = File::open(&p).map_err(|e| Failure::Check(format!("{}: {e}", p.display())))?;
            let t = ClassTable::read_csv(BufReader::new(f), &p.display().to_string(), None)?;
            let src = json!({ "table": p.display().to_string(), "X": t.bound() });
            Ok((t, src))
        }
        (None, x) => {
            let x = x.unwrap_or(default_x);
            Ok((enumerate_classes(x)?, json!({ "X": x })))
        }
    }
}

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::Usage(format!("--{name} must be positive and finite, got {v}")))
    }
}

fn run(c: &Command, out: &Path) -> CmdResult {
    match c {
        Command::Enumerate { x, .. } => {
            let t = enumerate_classes(*x)?;
            let mut f = BufWriter::new(File::create(out)?);
            t.write_csv(&mut f)?;
            f.flush()?;
            Ok(Report {
                params: json!({ "X": x }),
                results: json!({ "classes": t.total_classes(*x), "records": t.records().len() }),
                passed: true,
            })
        }
        Command::Coeffs { table, variant, .. } => {
            let (t, src) = load_table(table, 10_000)?;
            let v = match variant {
                CoeffVariant::Plus => CoefficientVariant::Plus,
                CoeffVariant::Minus => CoefficientVariant::Minus,
                CoeffVariant::Add => CoefficientVariant::Add,
                CoeffVariant::Sub => CoefficientVariant::Sub,
            };
            let a = dirichlet_coefficients(&t, v);
            let rows: Vec<String> = a.iter().enumerate().skip(1).map(|(n, x)| format!("{n},{x:.16e}")).collect();
            write_csv(out, "n,a_n", &rows)?;
            Ok(Report { params: json!({ "source": src, "variant": format!("{variant:?}").to_lowercase() }), results: json!({ "rows": rows.len() }), passed: true })
        }
        Command::ZetaScan { table, variant, tau_min, tau_max, step, g, tail_tol, truncation, .. } => {
            positive("step", *step)?;
            positive("tail-tol", *tail_tol)?;
            if !(tau_min.is_finite() && tau_max.is_finite() && tau_min <= tau_max) {
                return Err(Failure::Usage(format!("need --tau-min ≤ --tau-max, got {tau_min}, {tau_max}")));
            }
            let count = ((tau_max - tau_min) / step + 1e-9).floor() as usize + 1;
            let taus: Vec<f64> = (0..count).map(|k| tau_min + k as f64 * step).collect();
            let (t, src) = load_table(table, 400_000)?;
            let v = if matches!(variant, AfeVariant::Add) { Variant::Add } else { Variant::Sub };
            let cfg = XiConfig { weight: *g, tail_tol: *tail_tol, truncation: *truncation, ..Default::default() };
            let mut rows = Vec::new();
            let mut points = Vec::new();
            let mut truncations = Vec::new();
            for &tau in &taus {
                let clock = Instant::now();
                let e = zeta_scan(&[tau], v, &t, &cfg)?.remove(0);
                rows.push(scan_csv_row(&e));
                truncations.push(e.truncation);
                points.push(json!({
                    "tau": tau,
                    "N": e.truncation,
                    "tail_bound": e.tail_bound,
                    "residue_bound": e.residue_bound,
                    "residue_caveat": e.residue_caveat,
                    "elapsed_s": clock.elapsed().as_secs_f64(),
                }));
            }
            write_csv(out, scan_csv_header(), &rows)?;
            Ok(Report {
                params: json!({
                    "source": src, "variant": v.name(), "tau_min": tau_min, "tau_max": tau_max, "step": step,
                    "G": g.tag(), "tail_tol": tail_tol, "truncation": truncation,
                }),
                results: json!({
                    "points": points,
                    "tau_monotone": taus.windows(2).all(|w| w[0] < w[1]),
                    "truncation_monotone": truncations.windows(2).all(|w| w[0] <= w[1]),
                }),
                passed: true,
            })
        }
        Command::FeCheck { table, tau, variant, tol, g1, g2, .. } => {
            positive("tol", *tol)?;
            if tau.iter().any(|t| !(t.abs() >= 1.0 && t.is_finite())) {
                return Err(Failure::Usage("--tau values need |τ| ≥ 1".into()));
            }
            let (t, src) = load_table(table, 400_000)?;
            let variants: &[Variant] = match variant {
                FeVariant::Add => &[Variant::Add],
                FeVariant::Sub => &[Variant::Sub],
                FeVariant::Both => &[Variant::Add, Variant::Sub],
            };
            let n = Some(t.bound());
            let mut rows = Vec::new();
            let mut passed = true;
            for &v in variants {
                for &tau in tau {
                    let a = xi_critical(tau, v, &t, &XiConfig { weight: *g1, truncation: n, ..Default::default() })?;
                    let b = xi_critical(tau, v, &t, &XiConfig { weight: *g2, truncation: n, ..Default::default() })?;
                    let g_gap = (a.value - b.value).norm() / a.value.norm();
                    let lam = a.lambda()?;
                    let real_gap = lam.im.abs() / lam.norm();
                    // two truncated sums can agree while both miss the same terms
                    let bound = (a.tail_bound + b.tail_bound + a.residue_bound + b.residue_bound) / a.value.norm();
                    for (check, value) in [("G-independence", g_gap), ("lambda-real", real_gap), ("error-bound", bound)] {
                        let ok = value < *tol;
                        passed &= ok;
                        eprintln!("{} tau={tau} {}: {value:.3e} (tol {tol:e})", if ok { "PASS" } else { "FAIL" }, check);
                        rows.push(format!("{tau},{},{check},{value:.16e},{tol:e},{ok}", v.name()));
                    }
                }
            }
            write_csv(out, "tau,variant,check,value,tol,pass", &rows)?;
            Ok(Report {
                params: json!({ "source": src, "tau": tau, "tol": tol, "G1": g1.tag(), "G2": g2.tag(), "truncation": n }),
                results: json!({ "checks": rows.len() }),
                passed,
            })
        }
        Command::Vdc { mode, y, tau, t, r, forms, samples, seed, max_stderr, .. } => {
            positive("Y", *y)?;
            positive("tau", *tau)?;
            positive("T", *t)?;
            positive("max-stderr", *max_stderr)?;
            if let Some(r) = r {
                positive("R", *r)?;
            }
            if *samples < 2 {
                return Err(Failure::Usage("--samples must be at least 2".into()));
            }
            let m = if matches!(mode, VdcMode::Generic) { Mode::Generic } else { Mode::Reducible };
            let mut p = recipe_parameters(*y, *tau, *t, m)?;
            if let Some(r) = r {
                p.r = *r;
            }
            p.seed = *seed;
            for v in &p.violations {
                eprintln!("note: {v}");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut rows = Vec::new();
            let mut worst: f64 = 0.0;
            for i in 0..*forms {
                let (avg, used, se) = match m {
                    Mode::Generic => {
                        let f = sample_generic_form(&mut rng, *y, *t)?;
                        let a = disc_phase_average(&f, p.r, *tau, *samples, seed.wrapping_add(1 + i), *max_stderr)?;
                        (a.value, a.samples, a.stderr)
                    }
                    Mode::Reducible => {
                        let f = sample_reducible_form(&mut rng, *y, *t)?;
                        (reducible_line_average(&f, p.r, *tau)?, 0, 0.0)
                    }
                };
                p.samples = used;
                worst = worst.max(avg.norm());
                rows.push(experiment_csv_row(&p, avg, used, se));
            }
            write_csv(out, experiment_csv_header(), &rows)?;
            Ok(Report {
                params: json!({
                    "mode": m.name(), "Y": y, "tau": tau, "T": t, "R": p.r, "R1": p.r1, "N": p.n, "H1": p.h1,
                    "H2": p.h2, "alpha": p.alpha, "delta": p.delta, "seed": seed, "samples": samples, "forms": forms,
                }),
                results: json!({
                    "max_abs_avg": worst,
                    "predicted_bound": p.predicted_bound(),
                    "violations": p.violations,
                }),
                passed: true,
            })
        }
        Command::Twist { s, s_im, phi, n, orbit, .. } => {
            if n.is_empty() || n.contains(&0) {
                return Err(Failure::Usage("--N values must be positive".into()));
            }
            let path = resolve_input(phi);
            let form = load_maass_form(&path)?;
            let x = *n.iter().max().unwrap();
            let table = enumerate_classes(x)?;
            let s = Complex64::new(*s, *s_im);
            let orbits: &[Orbit] = match orbit {
                TwistOrbit::Plus => &[Orbit::Plus],
                TwistOrbit::Minus => &[Orbit::Minus],
                TwistOrbit::Both => &[Orbit::Plus, Orbit::Minus],
            };
            let mut rows = Vec::new();
            let mut sums = Vec::new();
            for &o in orbits {
                for &len in n {
                    let t = twisted_partial_sum(s, &table, &form, len, o)?;
                    rows.push(format!("{},{}", orbit_name(o), twisted_csv_row(&t)));
                    sums.push(json!({ "orbit": orbit_name(o), "N": len, "classes": t.classes, "tail_est": t.tail_estimate }));
                }
            }
            write_csv(out, &format!("orbit,{}", twisted_csv_header()), &rows)?;
            Ok(Report {
                params: json!({
                    "s_re": s.re, "s_im": s.im, "phi": path.display().to_string(), "R": form.spectral_r(),
                    "phi_source": form.source(), "N": n,
                }),
                results: json!({ "sums": sums }),
                passed: true,
            })
        }
        Command::Selftest { seed, .. } => {
            let checks = selftest::run(*seed);
            let passed = checks.iter().all(|c| c.pass);
            let rows: Vec<String> = checks
                .iter()
                .map(|c| format!("{},{:.16e},{:e},{}", c.name, c.value, c.tol, c.pass))
                .collect();
            for c in &checks {
                eprintln!("{} {}: {:.3e} (tol {:e})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.value, c.tol);
            }
            write_csv(out, "check,value,tol,pass", &rows)?;
            Ok(Report { params: json!({ "seed": seed }), results: json!({ "checks": checks.len() }), passed })
        }
    }
}

fn orbit_name(o: Orbit) -> &'static str {
    match o {
        Orbit::Plus => "plus",
        Orbit::Minus => "minus",
    }
}
