use std::sync::OnceLock;

use shintani::afe::*;
use shintani::forms::{enumerate_classes, ClassTable};
use shintani::quad::QuadratureConfig;
use shintani::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn table() -> &'static ClassTable {
    static T: OnceLock<ClassTable> = OnceLock::new();
    T.get_or_init(|| enumerate_classes(400_000).unwrap())
}

// Γ(1/3), Γ(1/6) from mpmath
const GAMMA_THIRD: f64 = 2.678_938_534_707_747_6;
const GAMMA_SIXTH: f64 = 5.566_316_001_780_235;

#[test]
fn gamma_factor_at_one_half() {
    // π^{-1}Γ(1/4)Γ(3/4)Γ(1/3)Γ(1/6) with Γ(1/4)Γ(3/4) = π√2
    let g = gamma_factor(c(0.5, 0.0), Variant::Add).unwrap();
    let want = 2f64.sqrt() * GAMMA_THIRD * GAMMA_SIXTH;
    assert!((g.re - want).abs() < 1e-11 * want && g.im.abs() < 1e-11 * want);
}

#[test]
fn gamma_factor_conjugation_and_poles() {
    for v in [Variant::Add, Variant::Sub] {
        for s in [c(0.5, 7.0), c(0.2, -33.0), c(2.5, 100.0)] {
            let a = gamma_factor(s.conj(), v).unwrap();
            let b = gamma_factor(s, v).unwrap().conj();
            assert!((a - b).norm() <= 1e-12 * a.norm());
        }
    }
    assert!(gamma_factor(c(0.0, 0.0), Variant::Add).is_err());
    assert!(gamma_factor(c(-1.0, 0.0), Variant::Sub).is_err());
    assert!(gamma_factor(c(1.0 / 6.0, 0.0), Variant::Add).is_err());
    assert!(gamma_factor(c(-5.0 / 6.0, 0.0), Variant::Sub).is_err());
}

#[test]
fn completed_lambda_two_ways() {
    for v in [Variant::Add, Variant::Sub] {
        for s in [c(0.5, 40.0), c(0.5, -60.0), c(1.5, 3.0)] {
            let xi = c(0.7, -1.3);
            let a = completed_lambda(s, v, xi).unwrap();
            let b = (s / 2.0 * CONDUCTOR.ln()).exp() * gamma_factor(s, v).unwrap() * xi;
            assert!((a - b).norm() <= 1e-12 * b.norm());
            let ac = completed_lambda(s.conj(), v, xi.conj()).unwrap();
            assert!((ac - a.conj()).norm() <= 1e-12 * a.norm());
        }
    }
}

#[test]
fn epsilon_factor_is_unimodular() {
    for v in [Variant::Add, Variant::Sub] {
        assert!((epsilon_factor(c(0.5, 0.0), v).unwrap() - 1.0).norm() < 1e-14);
        for k in 0..=200 {
            let e = epsilon_factor(c(0.5, k as f64), v).unwrap();
            assert!((e.norm() - 1.0).abs() < 1e-10, "τ = {k}: |ε| = {}", e.norm());
        }
        for s in [c(0.3, 5.0), c(0.8, -12.0)] {
            let p = epsilon_factor(s, v).unwrap() * epsilon_factor(1.0 - s, v).unwrap();
            assert!((p - 1.0).norm() < 1e-10);
        }
    }
}

#[test]
fn weights() {
    for w in [Weight::CosPower(2.0), Weight::CosPower(24.0), Weight::Gaussian] {
        assert!((w.eval(c(0.0, 0.0)) - 1.0).norm() < 1e-15);
        let u = c(1.3, 2.1);
        assert!((w.eval(u) - w.eval(-u)).norm() <= 1e-12 * w.eval(u).norm());
    }
    assert!(Weight::CosPower(1.5).validate().is_err());
    assert_eq!("cospower(24)".parse::<Weight>().unwrap(), Weight::CosPower(24.0));
    assert_eq!("gaussian".parse::<Weight>().unwrap(), Weight::Gaussian);
    assert!("cospower(1)".parse::<Weight>().is_err());
    assert_eq!(Weight::default().tag(), "cospower(24)");
}

#[test]
fn weight_small_y_limit() {
    let cfg = QuadratureConfig::default();
    for v in [Variant::Add, Variant::Sub] {
        let y = 40.0 * 40.0 * 1e-4;
        let val = weight_v(c(0.5, 40.0), y, v, Weight::default(), &cfg).unwrap();
        assert!((val - 1.0).norm() < 0.05, "{val}");
    }
}

#[test]
fn weight_large_y_envelope() {
    let cfg = QuadratureConfig::default();
    let y = 1e6;
    let env = 2.0 * (1.0 + y / 1600.0f64).powi(-8);
    let val = weight_v(c(0.5, 40.0), y, Variant::Add, Weight::default(), &cfg).unwrap();
    assert!(val.norm() <= env, "{val} vs {env}");
}

#[test]
fn weight_contour_independence() {
    let cfg = QuadratureConfig::default();
    let s = c(0.5, 40.0);
    for v in [Variant::Add, Variant::Sub] {
        for y in [300.0, 843.0, 8430.0] {
            let a = weight_v_on(s, y, v, Weight::default(), 2.0, &cfg).unwrap().value;
            let b = weight_v_on(s, y, v, Weight::default(), 3.0, &cfg).unwrap().value;
            assert!((a - b).norm() <= 1e-9 * b.norm(), "y={y}: {a} vs {b}");
        }
    }
}

#[test]
fn weight_kernel_matches_adaptive() {
    let cfg = QuadratureConfig::default();
    let s = c(0.5, -25.0);
    for contour in [1.0, 3.0] {
        let k = WeightKernel::new(s, Variant::Sub, Weight::default(), contour, 0.1).unwrap();
        for y in [5.0, 300.0, 4000.0] {
            let a = weight_v_on(s, y, Variant::Sub, Weight::default(), contour, &cfg).unwrap();
            let b = k.eval(y);
            assert!((a.value - b).norm() <= 1e-10 * k.abs_moment() * y.powf(-contour), "c={contour} y={y}");
            assert!(b.norm() <= k.abs_moment() * y.powf(-contour));
        }
    }
}

#[test]
fn diagonal_transform_roundtrip() {
    let s3 = 3f64.sqrt();
    let (p, m) = diagonal_transform(c(s3, 0.0), c(s3, 0.0));
    assert!((p - 1.0).norm() < 1e-15 && m.norm() < 1e-15);
    let (a, b) = (c(0.3, -2.0), c(-1.7, 0.4));
    let (p, m) = diagonal_transform(a, b);
    let (a2, b2) = diagonal_combine(p, m);
    assert!((a2 - a).norm() < 1e-14 && (b2 - b).norm() < 1e-14);
}

#[test]
fn xi_conjugate_symmetry() {
    let cfg = XiConfig::default();
    for v in [Variant::Add, Variant::Sub] {
        let a = xi_critical(20.0, v, table(), &cfg).unwrap();
        let b = xi_critical(-20.0, v, table(), &cfg).unwrap();
        assert!(a.residue_caveat);
        assert!((a.value - b.value.conj()).norm() <= 1e-8 * a.value.norm());
    }
}

#[test]
fn xi_lambda_real_and_weight_independent_at_40() {
    let xa = xi_critical(40.0, Variant::Add, table(), &XiConfig::default()).unwrap();
    assert!(!xa.residue_caveat && xa.residue_bound < 1e-20);
    assert!(xa.tail_bound <= 1e-8);
    let l = xa.lambda().unwrap();
    assert!(l.im.abs() / l.norm() < 1e-6);
    let cfg16 = XiConfig { weight: Weight::CosPower(16.0), truncation: Some(table().bound()), ..Default::default() };
    let x16 = xi_critical(40.0, Variant::Add, table(), &cfg16).unwrap();
    assert!((x16.value - xa.value).norm() <= 1e-6 * xa.value.norm(), "{} vs {}", x16.value, xa.value);
}

#[test]
fn xi_truncation_certificate() {
    for v in [Variant::Add, Variant::Sub] {
        let e = xi_critical(25.0, v, table(), &XiConfig::default()).unwrap();
        let cfg2 = XiConfig { truncation: Some(2 * e.truncation), ..Default::default() };
        let e2 = xi_critical(25.0, v, table(), &cfg2).unwrap();
        assert!((e2.value - e.value).norm() <= e.tail_bound, "{} > {}", (e2.value - e.value).norm(), e.tail_bound);
        let (p, m) = diagonal_transform(e.value, e.value);
        assert!((diagonal_combine(p, m).0 - e.value).norm() <= 1e-12 * e.value.norm());
    }
}

#[test]
fn xi_rejects_small_tables_and_bad_input() {
    let small = enumerate_classes(2000).unwrap();
    match xi_critical(40.0, Variant::Add, &small, &XiConfig::default()) {
        Err(shintani::Error::TableTooSmall { have, need }) => assert!(have == 2000 && need > 2000),
        other => panic!("{other:?}"),
    }
    assert!(xi_critical(0.5, Variant::Add, table(), &XiConfig::default()).is_err());
}

#[test]
fn scan_csv_shape() {
    let e = xi_critical(12.0, Variant::Sub, table(), &XiConfig::default()).unwrap();
    assert_eq!(scan_csv_header(), "tau,variant,re_xi,im_xi,abs_xi,N,tail_bound,G_tag");
    let row = scan_csv_row(&e);
    let f: Vec<&str> = row.split(',').collect();
    assert_eq!(f.len(), 8);
    assert_eq!(f[1], "sub");
    assert_eq!(f[7], "cospower(24)");
    assert_eq!(f[5].parse::<u64>().unwrap(), e.truncation);
}
