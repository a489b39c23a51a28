use aztec_boundary::*;
use aztec_kasteleyn::enumerate_tilings;
use aztec_lattice::{Diamond, DimerConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

struct Setup {
    frame: ScalingFrame,
    lines: Vec<LineSpec>,
    embeds: Vec<IntervalEmbed>,
}

fn setup(m: usize, copies: usize, betas: &[f64], intervals: &[(f64, f64)]) -> Setup {
    let frame = ScalingFrame::new(m, 0.5, Some(copies)).unwrap();
    let lines = build_lines(&frame, betas).unwrap();
    let embeds = embed_intervals(&frame, &lines, intervals).unwrap();
    Setup { frame, lines, embeds }
}

fn all_tilings() -> (Diamond, Vec<DimerConfig>) {
    let d = Diamond::new(4, 0.5).unwrap();
    let t = enumerate_tilings(&d).unwrap();
    (d, t)
}

fn brute_laplace(s: &Setup, d: &Diamond, tilings: &[DimerConfig], w: &[Vec<Complex64>]) -> Complex64 {
    let mut z = 0.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for t in tilings {
        let wt = t.weight(d);
        let mu = measure_from_config(d, t, &s.lines, &s.embeds).unwrap();
        acc += wt * mu.pair(w).exp();
        z += wt;
    }
    acc / z
}

#[test]
fn routes_agree_on_every_tiling_of_order_four() {
    let (d, tilings) = all_tilings();
    assert_eq!(tilings.len(), 1024);
    // beta = 0 and 0.3 land on the same diagonal at m = 1
    let s = setup(1, 2, &[0.0, 0.3], &[(1.1, 4.2), (1.1, 2.0), (2.2, 4.2)]);
    let mut nonzero = 0;
    for t in &tilings {
        let mu = measure_from_config(&d, t, &s.lines, &s.embeds).unwrap();
        for row in &mu.quanta {
            for &x in row {
                assert_eq!(x % 4, 0);
                nonzero += (x != 0) as usize;
            }
        }
        assert_eq!(mu.divisor(), 8);
        for p in 0..3 {
            for q in 0..2 {
                let v = mu.value(p, q) * mu.divisor() as f64;
                assert_eq!(v, v.round());
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn empty_interval_measures_zero() {
    let (d, tilings) = all_tilings();
    let s = setup(1, 1, &[0.0], &[(1.1, 4.2)]);
    let piece = DiscreteInterval::between(&s.frame, &s.lines, 0, 3, 3).unwrap();
    assert!(piece.is_empty());
    for t in tilings.iter().step_by(37) {
        let h = aztec_lattice::HeightField::new(&d, t).unwrap();
        assert_eq!(height_route(&h, &piece).unwrap(), 0);
        assert_eq!(particle_route(&d, t, &s.lines[0], &piece).unwrap(), 0);
    }
}

#[test]
fn zero_weights_give_one() {
    let s = setup(1, 1, &[0.0], &[(1.1, 4.2)]);
    let k = FiniteKernel::new(&s.frame).unwrap();
    let v = finite_fredholm(&s.frame, &k, &s.lines, &s.embeds, &[vec![c(0.0)]], KernelChoice::Particle).unwrap();
    assert_eq!(v, c(1.0));
    let est = mc_laplace(&s.frame, &s.lines, &s.embeds, &[vec![c(0.0)]], 50, 3, SamplerKind::Shuffling).unwrap();
    assert_eq!(est.mean, c(1.0));
    assert_eq!(est.stderr, 0.0);
}

#[test]
fn single_interval_matches_enumeration() {
    let (d, tilings) = all_tilings();
    let s = setup(1, 1, &[0.0], &[(1.1, 4.2)]);
    let w = vec![vec![c(0.3)]];
    let k = FiniteKernel::new(&s.frame).unwrap();
    let det = finite_fredholm(&s.frame, &k, &s.lines, &s.embeds, &w, KernelChoice::Particle).unwrap();
    let brute = brute_laplace(&s, &d, &tilings, &w);
    assert!((det - brute).norm() < 1e-9, "{det} vs {brute}");
    assert!((det - c(1.0)).norm() > 1e-3);
}

/// Random lines, intervals, copies and complex weights on the order-4 diamond.
fn random_setting(rng: &mut impl Rng) -> (Setup, Vec<Vec<Complex64>>) {
    loop {
        let copies = rng.random_range(1..=3);
        let betas: &[f64] = if rng.random_bool(0.5) { &[0.0] } else { &[0.0, 0.3] };
        let n_int = rng.random_range(1..=2);
        let mut intervals = Vec::new();
        let mut lo = rng.random_range(1.1..2.0);
        for _ in 0..n_int {
            let hi = lo + rng.random_range(0.3..2.5);
            intervals.push((lo, hi));
            lo = hi + 0.1;
        }
        let frame = ScalingFrame::new(1, 0.5, Some(copies)).unwrap();
        let lines = build_lines(&frame, betas).unwrap();
        let Ok(embeds) = embed_intervals(&frame, &lines, &intervals) else { continue };
        let w = (0..n_int)
            .map(|_| betas.iter().map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-0.5..0.5))).collect())
            .collect();
        return (Setup { frame, lines, embeds }, w);
    }
}

#[test]
fn random_settings_match_enumeration_and_gauge() {
    let (d, tilings) = all_tilings();
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let k = FiniteKernel::new(&ScalingFrame::new(1, 0.5, Some(1)).unwrap()).unwrap();
    for _ in 0..20 {
        let (s, w) = random_setting(&mut rng);
        let det = finite_fredholm(&s.frame, &k, &s.lines, &s.embeds, &w, KernelChoice::Particle).unwrap();
        let gauge = finite_fredholm(&s.frame, &k, &s.lines, &s.embeds, &w, KernelChoice::Gauge).unwrap();
        let brute = brute_laplace(&s, &d, &tilings, &w);
        assert!((det - brute).norm() < 1e-9, "{det} vs {brute}");
        assert!((det - gauge).norm() < 1e-10, "{det} vs {gauge}");
    }
}

#[test]
fn gauge_invariance_on_larger_diamond() {
    // m = 4 has distinct copies and a line off the diagonal
    let s = setup(4, 2, &[-0.2, 0.0], &[(-0.3, 0.5), (0.6, 1.5)]);
    let k = FiniteKernel::new(&s.frame).unwrap();
    let w = vec![vec![c(0.4), c(-0.3)], vec![Complex64::new(0.2, 0.1), c(0.5)]];
    let det = finite_fredholm(&s.frame, &k, &s.lines, &s.embeds, &w, KernelChoice::Particle).unwrap();
    let gauge = finite_fredholm(&s.frame, &k, &s.lines, &s.embeds, &w, KernelChoice::Gauge).unwrap();
    assert!((det - gauge).norm() < 1e-10 * det.norm().max(1.0), "{det} vs {gauge}");
}

#[test]
fn monte_carlo_agrees_with_determinant() {
    let s = setup(1, 2, &[0.0], &[(1.1, 4.2)]);
    let w = vec![vec![c(0.5)]];
    let k = FiniteKernel::new(&s.frame).unwrap();
    let det = finite_fredholm(&s.frame, &k, &s.lines, &s.embeds, &w, KernelChoice::Particle).unwrap();
    for kind in [SamplerKind::Shuffling, SamplerKind::Exact] {
        let est = mc_laplace(&s.frame, &s.lines, &s.embeds, &w, 20_000, 11, kind).unwrap();
        assert!((est.mean - det).norm() < 4.0 * est.stderr, "{kind:?}: {} +- {} vs {det}", est.mean, est.stderr);
        assert!(est.log_stderr > 0.0);
    }
}
