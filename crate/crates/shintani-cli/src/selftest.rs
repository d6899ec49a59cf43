use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shintani::coords::{coords_from_form, form_from_coords};
use shintani::forms::{enumerate_classes, IntMatrix, IntegerCubicForm, RealCubicForm};
use shintani::specfun::{bessel_k, log_gamma};
use shintani::Complex64;

pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

fn check(name: &'static str, value: shintani::Result<f64>, tol: f64) -> Check {
    match value {
        Ok(v) => Check { name, value: v, tol, pass: v <= tol },
        Err(e) => {
            eprintln!("{name}: {e}");
            Check { name, value: f64::INFINITY, tol, pass: false }
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut g = if rng.gen_bool(0.5) { IntMatrix::IDENTITY } else { IntMatrix::SWAP };
    for _ in 0..rng.gen_range(1..6) {
        g = g.mul(&IntMatrix::unipotent(rng.gen_range(-4..=4))).and_then(|m| m.mul(&IntMatrix::S)).unwrap_or(g);
    }
    g
}

fn bessel_half() -> shintani::Result<f64> {
    let k = bessel_k(Complex64::new(0.5, 0.0), 2.0)?;
    let want = (std::f64::consts::PI / 4.0).sqrt() * (-2.0f64).exp();
    Ok((k - want).norm() / want)
}

fn gamma_half() -> shintani::Result<f64> {
    let g = log_gamma(Complex64::new(0.5, 0.0))?;
    Ok((g - std::f64::consts::PI.sqrt().ln()).norm())
}

fn disc_invariance(rng: &mut ChaCha8Rng) -> shintani::Result<f64> {
    let mut failures = 0;
    for _ in 0..1000 {
        let f = IntegerCubicForm::from_array(std::array::from_fn(|_| rng.gen_range(-30..=30)));
        let g = random_matrix(rng);
        let d = f.discriminant() * num_bigint::BigInt::from(g.det() * g.det());
        if f.act(&g)?.discriminant() != d {
            failures += 1;
        }
    }
    Ok(failures as f64)
}

fn coords_roundtrip(rng: &mut ChaCha8Rng) -> shintani::Result<(f64, f64)> {
    let mut worst: f64 = 0.0;
    let mut worst_lambda: f64 = 0.0;
    let mut done = 0;
    while done < 200 {
        let f = RealCubicForm(std::array::from_fn(|_| rng.gen_range(-10.0..10.0)));
        let disc = f.discriminant();
        if disc.abs() < 1e-3 {
            continue;
        }
        let h = coords_from_form(&f)?;
        worst = worst.max(form_from_coords(&h).sub(&f).norm_inf() / f.norm_inf());
        worst_lambda = worst_lambda.max((h.lambda.powi(4) - disc.abs()).abs() / disc.abs());
        done += 1;
    }
    Ok((worst, worst_lambda))
}

fn oracle_table() -> shintani::Result<f64> {
    let path = crate::resolve_input(std::path::Path::new("classes_300.csv"));
    let want = std::fs::read_to_string(&path)?;
    let got = enumerate_classes(300)?.to_csv_string();
    Ok(if got == want { 0.0 } else { 1.0 })
}

/// Fast checks; each reports a nonnegative defect and its tolerance.
pub fn run(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        check("bessel_k(1/2, 2) closed form", bessel_half(), 1e-10),
        check("log_gamma(1/2)", gamma_half(), 1e-12),
        check("disc(g.f) = det(g)^2 disc(f), failures", disc_invariance(&mut rng), 0.0),
    ];
    match coords_roundtrip(&mut rng) {
        Ok((r, l)) => {
            out.push(check("coordinate roundtrip", Ok(r), 1e-8));
            out.push(check("lambda^4 = |Disc|", Ok(l), 1e-10));
        }
        Err(e) => {
            out.push(check("coordinate roundtrip", Err(e.clone()), 1e-8));
            out.push(check("lambda^4 = |Disc|", Err(e), 1e-10));
        }
    }
    out.push(check("enumerate(300) vs committed oracle table", oracle_table(), 0.0));
    out
}
