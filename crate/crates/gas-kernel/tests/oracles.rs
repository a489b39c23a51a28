use std::f64::consts::{PI, TAU};

use aztec_gas::*;
use aztec_lattice::Vertex;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn rng(seed: u64) -> rand::rngs::StdRng {
    rand::rngs::StdRng::seed_from_u64(seed)
}

/// `a f00 - a^2 (f00^2 + f01 f10)` and `f00 - f11`.
fn f_relations(a: f64, w: Complex64) -> (f64, f64) {
    let f = |e, ep| f_eval(a, e, ep, w).unwrap();
    let (f00, f01, f10, f11) = (f(0, 0), f(0, 1), f(1, 0), f(1, 1));
    ((a * f00 - a * a * (f00 * f00 + f01 * f10)).norm(), (f00 - f11).norm())
}

#[test]
fn f_relations_hold_on_the_unit_circle() {
    let mut r = rng(3);
    for &a in &[0.2, 0.5, 0.8] {
        for _ in 0..100 {
            let (quad, diag) = f_relations(a, unit(r.random_range(0.0..TAU)));
            assert!(quad <= 1e-10 && diag <= 1e-10, "a={a}: {quad:e} {diag:e}");
        }
    }
}

#[test]
fn closed_form_matches_the_contour_on_the_unit_circle() {
    let mut r = rng(4);
    for _ in 0..40 {
        let a = r.random_range(0.05..0.95);
        let w = unit(r.random_range(0.0..TAU));
        for e in 0..2 {
            for ep in 0..2 {
                let c = f_eval(a, e, ep, w).unwrap();
                let i = f_integral(a, e, ep, w, 1024);
                assert!((c - i).norm() < 1e-12, "a={a} w={w}: {c} vs {i}");
            }
        }
    }
}

#[test]
fn root_selection_on_the_unit_circle() {
    let mut r = rng(5);
    for _ in 0..1000 {
        let a = r.random_range(0.01..0.99);
        let w = unit(r.random_range(0.0..TAU));
        let g = gas_roots(a, w);
        assert!(g.r1.norm() < 1.0 && g.r2.norm() > 1.0);
        assert!((g.r1 * g.r2 - w * w).norm() < 1e-12);
        let b = 1.0 + 2.0 * (a + 1.0 / a) * w + w * w;
        assert!((g.r1 + g.r2 + b).norm() < 1e-12 * b.norm().max(1.0));
    }
}

#[test]
fn symbol_is_positive_on_the_torus_exactly_in_the_gas_phase() {
    for i in 1..10 {
        let a = i as f64 / 10.0;
        let s = TorusSymbol::new(a).unwrap();
        let min = s.torus_minimum(512);
        assert!(min > 0.0);
        assert!((min - (2.0 * (1.0 + a * a) - 4.0 * a)).abs() < 1e-12);
    }
    assert!(TorusSymbol::new(1.0).is_err());
    assert!(TorusSymbol::probe(1.0).torus_minimum(512).abs() < 1e-12);
}

#[test]
fn gas_correlation_matches_the_double_contour() {
    for (e, ep) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let w = gas_correlation_window(0.5, e, ep, 5).unwrap();
        for t in -5..=5 {
            let brute = gas_correlation_bruteforce(0.5, e, ep, t, 160);
            assert!((w.get(t) - brute).norm() < 1e-10, "({e},{ep}) t={t}: {} vs {brute}", w.get(t));
        }
    }
}

#[test]
fn gas_correlation_decays_geometrically() {
    let w = gas_correlation_window(0.5, 0, 0, 40).unwrap();
    let logs: Vec<f64> = (10..=40).map(|t| w.get(t).norm().ln()).collect();
    let n = logs.len() as f64;
    let xm = (10..=40).map(|t| t as f64).sum::<f64>() / n;
    let ym = logs.iter().sum::<f64>() / n;
    let slope = (10..=40).zip(&logs).map(|(t, y)| (t as f64 - xm) * (y - ym)).sum::<f64>()
        / (10..=40).map(|t| (t as f64 - xm).powi(2)).sum::<f64>();
    assert!(slope < 0.0, "{slope}");
    let ratios: Vec<f64> = (30..40).map(|t| (w.get(t + 1) / w.get(t)).norm()).collect();
    let last = ratios[ratios.len() - 1];
    assert!(last < 1.0);
    assert!(ratios.iter().all(|r| (r / last - 1.0).abs() < 0.01), "{ratios:?}");
    // the nearest singularity of f outside the circle sits at 2.618..
    let (_, r_out) = decay_radii(0.5).unwrap();
    assert!((r_out - (1.0 + 0.618034 / 2.0)).abs() < 1e-5, "{r_out}");
    assert!((last - 0.381966).abs() < 0.02, "{last}");
}

/// `E00 = (1/2pi) int dt / sqrt(alpha^2 - 16 a^2 cos^2 t) = 1 / AGM(alpha, sqrt(alpha^2 - 16 a^2))`.
fn e00_agm(a: f64) -> f64 {
    let alpha = 2.0 * (1.0 + a * a);
    let (mut x, mut y) = (alpha, (alpha * alpha - 16.0 * a * a).sqrt());
    for _ in 0..40 {
        (x, y) = ((x + y) / 2.0, (x * y).sqrt());
    }
    1.0 / x
}

#[test]
fn e_origin_against_independent_reductions() {
    let e = ekl_entry(0.5, 0, 0).unwrap();
    assert!((e - 0.5080996800485291).abs() < 1e-13);
    assert!((e - e00_agm(0.5)).abs() < 1e-13, "{} {}", e, e00_agm(0.5));
    // 1D quadrature of 1/sqrt(6.25 - 4 cos^2)
    let n = 400;
    let q: f64 = (0..n).map(|j| 1.0 / (6.25 - 4.0 * (TAU * j as f64 / n as f64).cos().powi(2)).sqrt()).sum::<f64>() / n as f64;
    assert!((e - q).abs() < 1e-13);
}

#[test]
fn e_window_matches_the_torus_sum_and_is_symmetric() {
    let t = ekl_window(0.5, -8..=8, -8..=8).unwrap();
    assert!(t.max_imag < 1e-12);
    for k in -8..=8 {
        for l in -8..=8 {
            let v = t.get(k, l).unwrap();
            assert!((v - t.get(l, k).unwrap()).abs() < 1e-12);
            assert!((v - t.get(-k, -l).unwrap()).abs() < 1e-12);
            let brute = ekl_torus_bruteforce(0.5, k, l, 128);
            assert!((v - brute.re).abs() < 1e-12 && brute.im.abs() < 1e-12, "({k},{l}) {v} {brute}");
        }
    }
}

#[test]
fn e_asymptotic_ratio_improves_along_the_diagonal() {
    let ratios: Vec<f64> = [50, 100, 200].iter().map(|&b| ekl_entry(0.5, b, b).unwrap() / ekl_asymptotic(0.5, 0, b)).collect();
    println!("E / asymptotic at b = 50, 100, 200: {ratios:?}");
    for (r, tol) in ratios.iter().zip([0.15, 0.10, 0.07]) {
        assert!((r - 1.0).abs() <= tol);
    }
    assert!((ratios[1] - 1.0).abs() < (ratios[0] - 1.0).abs());
    assert!((ratios[2] - 1.0).abs() < (ratios[1] - 1.0).abs());
}

#[test]
fn e_sign_follows_the_asymptotic_sign() {
    let mut r = rng(6);
    let mut checked = 0;
    while checked < 20 {
        let big_b: i64 = r.random_range(-120..=120);
        let big_a: i64 = r.random_range(-120..=120);
        if big_a.abs().max(big_b.abs()) < 50 {
            continue;
        }
        let e = ekl_entry(0.5, big_b + big_a, big_b - big_a).unwrap();
        let asym = ekl_asymptotic(0.5, big_a, big_b);
        if e == 0.0 {
            continue;
        }
        assert_eq!(e.signum(), asym.signum(), "A={big_a} B={big_b}: {e:e} vs {asym:e}");
        checked += 1;
    }
}

#[test]
fn e_obeys_the_gaussian_bound_with_a_fitted_constant() {
    // |E| <= (C / sqrt b) Cc^{2b} (exp(-d1 a^2 / b) + exp(-d2 b))
    let a: f64 = 0.5;
    let c = a / (1.0 + a * a);
    let cc = (1.0 - (1.0 - 2.0 * c).sqrt()) / (2.0 * c).sqrt();
    let d1 = 0.5 * (1.0 - 2.0 * c).sqrt() / (2.0 * c);
    let d2 = 0.1;
    let mut worst = 0.0f64;
    for b in (20..=120).step_by(20) {
        for am in (-b..=b).step_by(7) {
            let e = ekl_entry(a, b + am, b - am).unwrap();
            let env = cc.powi(2 * b as i32) / (b as f64).sqrt() * ((-d1 * (am * am) as f64 / b as f64).exp() + (-d2 * b as f64).exp());
            worst = worst.max(e.abs() / env);
        }
    }
    assert!(worst.is_finite() && worst < 1.0, "fitted C = {worst}");
}

#[test]
fn full_plane_inverse_matches_the_defining_integral() {
    let mut r = rng(7);
    let mut cache = EklCache::new(0.5).unwrap();
    let mut done = 0;
    while done < 20 {
        let x = Vertex::new(2 * r.random_range(-4..4i64) + 1, 2 * r.random_range(-4..4i64));
        let y = Vertex::new(2 * r.random_range(-4..4i64), 2 * r.random_range(-4..4i64) + 1);
        let fast = full_plane_kinv(&mut cache, x, y).unwrap();
        let slow = full_plane_kinv_bruteforce(0.5, x, y, 128).unwrap();
        assert!((fast - slow).norm() < 1e-10, "{x:?} {y:?}: {fast} vs {slow}");
        done += 1;
    }
    assert!(full_plane_kinv(&mut cache, Vertex::new(0, 1), Vertex::new(1, 0)).is_err());
}

#[test]
fn h_is_the_parity_xor() {
    use aztec_lattice::h_parity;
    assert_eq!(h_parity(0, 1), 1);
    assert_eq!(h_parity(1, 0), 1);
    assert_eq!(h_parity(0, 0), 0);
    assert_eq!(h_parity(1, 1), 0);
}

#[test]
fn eigenvalues_are_zero_and_minus_one() {
    for i in 1..10 {
        let a = i as f64 / 10.0;
        let (hi, lo) = g_matrix_eigencheck(a).unwrap();
        assert!(hi.norm() < 1e-12 && (lo + 1.0).norm() < 1e-12, "a={a}: {hi} {lo}");
        for s in 1..=3 {
            let q = q_sum(a, s).unwrap();
            let want = if s % 2 == 0 { 1.0 } else { -1.0 };
            assert!((q - want).norm() < 1e-12, "a={a} s={s}: {q}");
        }
    }
}

#[test]
fn determinant_identity_at_random_points() {
    let mut r = rng(8);
    for _ in 0..100 {
        let a = r.random_range(0.05..0.95);
        let omega = unit(r.random_range(0.0..TAU));
        let w = Complex64::new(r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
        let m = r.random_range(1..20u32);
        let d = f_omega_determinant(a, omega, w, m).unwrap();
        assert!((d - 1.0).norm() < 1e-10, "{d}");
    }
}

#[test]
fn off_circle_and_out_of_phase_inputs_are_rejected() {
    assert!(matches!(f_eval(0.5, 0, 0, Complex64::new(0.0, 1.01)), Err(GasError::OffCircle(_))));
    assert!(matches!(gas_correlation(1.0, 0, 0, 1), Err(GasError::NotGasPhase(_))));
    assert!(ekl_window(1.5, 0..=1, 0..=1).is_err());
    assert!(f_eval(0.5, 0, 0, unit(PI)).is_ok());
}

proptest! {
    #[test]
    fn f_relations_random(a in 0.02f64..0.98, theta in 0.0f64..TAU) {
        let (quad, diag) = f_relations(a, unit(theta));
        prop_assert!(quad <= 1e-10 && diag <= 1e-10);
    }

    #[test]
    fn e_vanishes_off_the_even_sublattice(k in -60i64..60, l in -60i64..60) {
        prop_assume!((k + l).rem_euclid(2) == 1);
        prop_assert_eq!(ekl_entry(0.5, k, l).unwrap(), 0.0);
    }

    #[test]
    fn e_symmetries(k in -40i64..40, l in -40i64..40, a in 0.1f64..0.9) {
        let e = ekl_entry(a, k, l).unwrap();
        prop_assert!((e - ekl_entry(a, l, k).unwrap()).abs() <= 1e-12 * e.abs().max(1e-300));
        prop_assert!((e - ekl_entry(a, -k, -l).unwrap()).abs() <= 1e-12 * e.abs().max(1e-300));
    }
}
