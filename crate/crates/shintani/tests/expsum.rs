use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shintani::coords::log_disc_partial;
use shintani::expsum::*;
use shintani::forms::RealCubicForm;
use shintani::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn vdc_examples() {
    let one = c(1.0, 0.0);
    let r = vdc_inequality(&[one, one], 1).unwrap();
    assert_eq!((r.lhs, r.rhs), (4.0, 4.5));
    let zero = vec![c(0.0, 0.0); 10];
    let r = vdc_inequality(&zero, 3).unwrap();
    assert_eq!((r.lhs, r.rhs, r.holds), (0.0, 0.0, true));
    assert!(vdc_inequality(&[one, one], 2).is_err());
    assert!(vdc_inequality(&[one, one], 0).is_err());
    assert!(vdc_inequality(&[], 1).is_err());
}

// right side recomputed from the definition with the correlations written out
fn vdc_rhs_naive(seq: &[Complex64], h: usize) -> f64 {
    let n = seq.len();
    let k = (n + h) as f64 / (h + 1) as f64;
    let mut rhs = k * seq.iter().map(|z| z.norm_sqr()).sum::<f64>();
    for s in 1..=h {
        let mut corr = c(0.0, 0.0);
        for i in 1..=n - s {
            corr += seq[i + s - 1] * seq[i - 1].conj();
        }
        rhs += 2.0 * k * (1.0 - s as f64 / (h + 1) as f64) * corr.norm();
    }
    rhs
}

#[test]
fn vdc_random_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = 0;
    for trial in 0..1000 {
        let n = rng.gen_range(2..60);
        let h = rng.gen_range(1..n);
        // mix of random amplitudes and pure phases, which are the tight cases
        let seq: Vec<Complex64> = if trial % 2 == 0 {
            (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
        } else {
            let (a, b): (f64, f64) = (rng.gen(), rng.gen());
            (0..n).map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * (a * j as f64 + b * (j * j) as f64))).collect()
        };
        let r = vdc_inequality(&seq, h).unwrap();
        assert!((r.rhs - vdc_rhs_naive(&seq, h)).abs() <= 1e-12 * r.rhs);
        if !r.holds {
            failures += 1;
        }
    }
    assert_eq!(failures, 0);
}

#[test]
fn linear_phase_examples() {
    let (v, _) = linear_phase_sum(0.5, 4).unwrap();
    assert!(v.norm() < 1e-14);
    let (v, b) = linear_phase_sum(0.0, 7).unwrap();
    assert_eq!((v, b), (c(7.0, 0.0), 7.0));
    let (v, b) = linear_phase_sum(3.0, 5).unwrap();
    assert_eq!((v, b), (c(5.0, 0.0), 5.0));
    assert!(linear_phase_sum(0.1, 0).is_err());
    assert_eq!(dist_to_integer(2.7), 0.2999999999999998);
}

#[test]
fn linear_phase_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let alpha = rng.gen_range(-5.0..5.0);
        let n = rng.gen_range(1..500u64);
        let (v, b) = linear_phase_sum(alpha, n).unwrap();
        let direct: Complex64 =
            (1..=n).map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * alpha * j as f64)).sum();
        assert!((v - direct).norm() < 1e-9 * n as f64, "α={alpha} N={n}");
        assert!(v.norm() <= 2.0 * b);
    }
}

fn sample_forms(seed: u64, count: usize, y: f64, t_max: f64) -> Vec<RealCubicForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_generic_form(&mut rng, y, t_max).unwrap()).collect()
}

#[test]
fn taylor_model_construction() {
    for f in sample_forms(12, 20, 1e8, 3.0) {
        let m = phase_taylor_model(&f, 500.0).unwrap();
        assert_eq!(m.terms.len(), 34);
        assert_eq!(m.eval(&[0.0; 4]), -500.0 * f.discriminant().abs().ln());
        for i in 0..4 {
            let mut al = [0u32; 4];
            al[i] = 1;
            let (_, coef) = m.terms.iter().find(|(a, _)| *a == al).unwrap();
            assert_eq!(*coef, -500.0 * log_disc_partial(al, &f).unwrap());
        }
        assert!((m.error_at(&[0.0; 4]).unwrap()).abs() == 0.0);
    }
    assert!(phase_taylor_model(&RealCubicForm([0.0, 0.0, 1.0, 1.0]), 1.0).is_err());
}

#[test]
fn taylor_model_error_envelope() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (y, tau, t1) = (1e12, 1e4, 2.0);
    let p = recipe_parameters(y, tau, t1, Mode::Generic).unwrap();
    let mut worst: f64 = 0.0;
    let mut above_two = 0;
    for f in sample_forms(14, 200, y, t1) {
        let m = phase_taylor_model(&f, tau).unwrap();
        for _ in 0..40 {
            let yv: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-p.r..=p.r));
            let norm = yv.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            let err = m.error_at(&yv).unwrap();
            assert!(err <= m.envelope(&yv), "{err} > {}", m.envelope(&yv));
            worst = worst.max(err / (m.delta * norm.powi(4)));
            if err > 2.0 * m.delta * norm.powi(4) {
                above_two += 1;
            }
        }
    }
    println!("taylor envelope: worst err/(δ‖y‖⁴) = {worst:.1}, {above_two}/8000 above 2δ‖y‖⁴");
}

#[test]
fn taylor_model_error_is_fourth_order() {
    // halving y divides the error by 16 once the fifth-order term is negligible
    for f in sample_forms(19, 10, 1e12, 2.0) {
        let m = phase_taylor_model(&f, 1e4).unwrap();
        let y0 = [3.0, -2.0, 1.5, 2.5];
        let e1 = m.error_at(&y0).unwrap();
        let e2 = m.error_at(&y0.map(|v| v / 2.0)).unwrap();
        assert!((e1 / e2 / 16.0 - 1.0).abs() < 0.1, "{}", e1 / e2);
    }
}

#[test]
fn phase_average_trivial_limits() {
    let f = sample_forms(15, 1, 1e12, 2.0)[0];
    let a = disc_phase_average(&f, 10.0, 0.0, 1000, 1, 1e-2).unwrap();
    assert_eq!(a.value, c(1.0, 0.0));
    assert_eq!(a.stderr, 0.0);
    let a = disc_phase_average(&f, 1e-9, 1e4, 1000, 1, 1e-2).unwrap();
    assert!((a.modulus() - 1.0).abs() < 1e-6);
    assert!(disc_phase_average(&RealCubicForm([0.0, 0.0, 0.0, 0.0]), 1.0, 1.0, 100, 1, 1e-2).is_err());
    // a budget too small for the requested error is refused
    assert!(disc_phase_average(&f, 20.0, 1e4, 50, 1, 1e-2).is_err());
}

#[test]
fn phase_average_cancels_at_recipe_radius() {
    let (y, tau, t1) = (1e12, 1e4, 2.0);
    let p = recipe_parameters(y, tau, t1, Mode::Generic).unwrap();
    let mut worst: f64 = 0.0;
    for (i, f) in sample_forms(16, 5, y, t1).iter().enumerate() {
        let a = disc_phase_average(f, p.r, tau, 40_000, 100 + i as u64, 1e-2).unwrap();
        assert!(a.stderr <= 0.01);
        assert!(a.modulus() <= 1.0 + 3.0 * a.stderr);
        println!("form {i}: |avg| = {:.4}, se = {:.4}, ratio = {:.4}", a.modulus(), a.stderr, a.modulus() / p.predicted_bound());
        worst = worst.max(a.modulus());
    }
    assert!(worst <= 0.2, "{worst}");
}

#[test]
fn phase_average_is_reproducible() {
    let f = sample_forms(17, 1, 1e10, 2.0)[0];
    let a = disc_phase_average(&f, 5.0, 300.0, 5000, 42, 1.0).unwrap();
    let b = disc_phase_average(&f, 5.0, 300.0, 5000, 42, 1.0).unwrap();
    assert_eq!(a, b);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let d = pool.install(|| disc_phase_average(&f, 5.0, 300.0, 5000, 42, 1.0).unwrap());
    assert_eq!(a.value.re.to_bits(), d.value.re.to_bits());
    assert_eq!(a.value.im.to_bits(), d.value.im.to_bits());
    let e = disc_phase_average(&f, 5.0, 300.0, 5000, 43, 1.0).unwrap();
    assert_ne!(a.value, e.value);
    assert_eq!(a.samples, 5000);
}

// Simpson's rule on a fine grid, away from the zero of the linear discriminant
fn line_average_quadrature(f: &RealCubicForm, r: f64, tau: f64) -> Complex64 {
    let n = 200_000;
    let h = 2.0 * r / n as f64;
    let g = |x: f64| {
        let d = RealCubicForm([f.0[0], f.0[1], f.0[2], f.0[3] + x]).discriminant();
        Complex64::from_polar(1.0, -tau * d.abs().ln())
    };
    let mut acc = g(-r) + g(r);
    for k in 1..n {
        acc += g(-r + h * k as f64) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0 / (2.0 * r)
}

#[test]
fn reducible_line_examples() {
    let f = RealCubicForm([0.0, 3.0, -2.0, 50.0]);
    assert!((reducible_line_average(&f, 7.0, 0.0).unwrap() - 1.0).norm() < 1e-14);
    for (r, tau) in [(7.0, 1.0), (7.0, 30.0), (20.0, 4.0)] {
        let a = reducible_line_average(&f, r, tau).unwrap();
        let q = line_average_quadrature(&f, r, tau);
        assert!((a - q).norm() < 1e-8, "R={r} τ={tau}: {a} vs {q}");
        assert!(a.norm() <= 1.0 + 1e-12);
    }
    // the segment crosses Disc = 0 at d = b c²/4 − 50 = −47
    let a = reducible_line_average(&f, 60.0, 2.0).unwrap();
    assert!(a.norm() <= 1.0 && a.is_finite());
    assert!(reducible_line_average(&RealCubicForm([1.0, 3.0, -2.0, 50.0]), 1.0, 1.0).is_err());
    assert!(reducible_line_average(&RealCubicForm([0.0, 0.0, -2.0, 50.0]), 1.0, 1.0).is_err());
}

#[test]
fn reducible_line_linear_phase_regime() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut over_2pi = 0;
    let mut checked = 0;
    while checked < 200 {
        let b: f64 = rng.gen_range(1.0..30.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let cc: f64 = rng.gen_range(-300.0..300.0);
        let d: f64 = rng.gen_range(-1e4..1e4);
        let tau = rng.gen_range(1.0..200.0);
        let r = rng.gen_range(0.1..50.0);
        let f = RealCubicForm([0.0, b, cc, d]);
        let disc = f.discriminant();
        let alpha = -4.0 * b.powi(3) / disc;
        // second-order phase τα²R²/2 small, so the phase is linear over the segment
        if !(disc.abs() >= 1.0 && tau * alpha * alpha * r * r < 0.01) {
            continue;
        }
        checked += 1;
        let a = reducible_line_average(&f, r, tau).unwrap().norm();
        let lin = 1.0 / (r * alpha.abs() * tau);
        assert!(a <= 1.1 * lin.min(1.0), "|avg| = {a}, bound {}", lin.min(1.0));
        if a > 1.1 * (lin / (2.0 * std::f64::consts::PI)).min(1.0) {
            over_2pi += 1;
        }
    }
    // min(1, 1/(2πRατ)) is exceeded by sin(x)/x near its first side lobes
    println!("linear-phase regime: {over_2pi}/200 exceed the bound with 2π");
}

#[test]
fn recipe_examples() {
    let p = recipe_parameters(1e12, 1e4, 2.0, Mode::Generic).unwrap();
    let want = 1e12f64.powf(0.25) / (1e4f64.powf(7.0 / 27.0) * 2f64.powf(7.0 / 3.0));
    assert!((p.r - want).abs() <= 1e-12 * want);
    assert_eq!(p.h2, p.h1 * p.h1);
    assert!((p.h1.powi(3) * p.alpha * p.r1.powi(3) - 1.0).abs() < 1e-12);
    assert!((p.n - 2.0 * p.r / p.r1).abs() < 1e-9 * p.n);
    let q = recipe_parameters(1e8, 1e3, 3.0, Mode::Reducible).unwrap();
    let want = 9.0 * 1e4 / 1e3f64.powf(2.0 / 3.0);
    assert!((q.r - want).abs() <= 1e-12 * want);
    let bad = recipe_parameters(1e4, 1e4, 1.0, Mode::Generic).unwrap();
    assert!(bad.violations.iter().any(|v| v.contains("τ^(4/3)")));
    assert!(recipe_parameters(0.0, 1.0, 1.0, Mode::Generic).is_err());
    assert_eq!("reducible".parse::<Mode>().unwrap(), Mode::Reducible);
    assert!("both".parse::<Mode>().is_err());
}

#[test]
fn experiment_csv() {
    let p = recipe_parameters(1e12, 1e4, 2.0, Mode::Generic).unwrap();
    assert_eq!(experiment_csv_header(), "mode,Y,tau,T,R,samples,seed,re_avg,im_avg,abs_avg,stderr");
    let row = experiment_csv_row(&p, c(0.1, -0.2), 4000, 0.01);
    let f: Vec<&str> = row.split(',').collect();
    assert_eq!(f.len(), 11);
    assert_eq!(f[0], "generic");
    assert_eq!(f[5], "4000");
}

#[test]
fn reducible_sampler() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let f = sample_reducible_form(&mut rng, 1e8, 1.5).unwrap();
        assert_eq!(f.0[0], 0.0);
        assert!((f.discriminant().abs() / 1e8 - 1.0).abs() < 1e-9);
        let p = recipe_parameters(1e8, 100.0, 1.5, Mode::Reducible).unwrap();
        assert!(reducible_line_average(&f, p.r, 100.0).unwrap().norm() <= 1.0 + 1e-12);
    }
    assert!(sample_reducible_form(&mut rng, -1.0, 1.0).is_err());
}
