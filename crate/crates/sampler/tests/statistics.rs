use std::collections::HashMap;

use aztec_kasteleyn::{build_k, edge_correlation, enumerate_tilings, invert_k};
use aztec_lattice::{Diamond, DimerConfig, ModelParams, Vertex};
use aztec_sampler::{sample_many, sample_shuffling, CellWeights, ExactSampler, ShuffleTable, Shuffler};

fn edge_list(d: &Diamond) -> Vec<(usize, aztec_lattice::Dir, Vertex, Vertex)> {
    let mut out = Vec::new();
    for bi in 0..d.size() {
        let b = d.black(bi);
        for (dir, w) in d.neighbors(b) {
            out.push((bi, dir, b, w));
        }
    }
    out
}

fn frequencies(d: &Diamond, samples: &[DimerConfig]) -> Vec<f64> {
    let edges = edge_list(d);
    let mut counts = vec![0usize; edges.len()];
    for c in samples {
        for (e, &(bi, dir, _, _)) in edges.iter().enumerate() {
            if c.dirs[bi] == dir {
                counts[e] += 1;
            }
        }
    }
    counts.into_iter().map(|k| k as f64 / samples.len() as f64).collect()
}

#[test]
fn shuffling_edge_marginals_match_kasteleyn() {
    let p = ModelParams::new(4, 0.5).unwrap();
    let d = Diamond::from_params(p.clone());
    let s = Shuffler::new(&p).unwrap();
    let samples = sample_many(100_000, |i| s.sample(11, i));
    let k = build_k(&d);
    let kinv = invert_k(&k).unwrap();
    let freq = frequencies(&d, &samples);
    for (e, &(_, _, b, w)) in edge_list(&d).iter().enumerate() {
        let p = edge_correlation(&[(b, w)], &k, &kinv).unwrap();
        let sigma = (p * (1.0 - p) / samples.len() as f64).sqrt().max(1e-12);
        assert!((freq[e] - p).abs() <= 4.0 * sigma, "{b:?}-{w:?}: {} vs {p}", freq[e]);
    }
}

#[test]
fn shuffling_matches_generic_weights_law() {
    // non-periodic weights exercise the generic renewal path
    let n = 3;
    let w = CellWeights::from_fn(n, |p, q, s| 0.4 + ((7 * p + 3 * q + 5 * s) % 6) as f64 * 0.3);
    let s = Shuffler::with_table(ShuffleTable::new(w.clone()).unwrap());
    let d = Diamond::new(n, 1.0).unwrap();
    let tilings = enumerate_tilings(&d).unwrap();
    // weight of a tiling from the cell table
    let weight = |c: &DimerConfig| -> f64 {
        let mut prod = 1.0;
        for bi in 0..d.size() {
            let b = d.black(bi);
            let wv = c.partner(&d, bi);
            // the edge lies in the cell centered at its odd-odd corner b + (d1, 0)
            let (cx, cy) = (wv.x1, b.x2);
            let (p, q) = ((cx - 1) / 2, (cy - 1) / 2);
            let slot = match (b.x1 > cx, wv.x2 > cy) {
                (true, true) => 0,
                (false, true) => 1,
                (false, false) => 2,
                (true, false) => 3,
            };
            prod *= w.get(p as usize, q as usize, slot);
        }
        prod
    };
    let z: f64 = tilings.iter().map(weight).sum();
    let count = 200_000;
    let mut hist: HashMap<DimerConfig, usize> = HashMap::new();
    for c in sample_many(count, |i| s.sample(5, i)) {
        *hist.entry(c).or_default() += 1;
    }
    for t in &tilings {
        let p = weight(t) / z;
        let f = *hist.get(t).unwrap_or(&0) as f64 / count as f64;
        let sigma = (p * (1.0 - p) / count as f64).sqrt();
        assert!((f - p).abs() <= 5.0 * sigma, "{f} vs {p}");
    }
    assert_eq!(hist.len(), tilings.len());
}

#[test]
fn exact_sampler_uniform_order_one() {
    let e = ExactSampler::new(Diamond::new(1, 1.0).unwrap()).unwrap();
    let count = 10_000;
    let first = sample_many(count, |i| e.sample(3, i).unwrap()).iter().filter(|c| c.dirs[0] == aztec_lattice::Dir::MinusE2).count();
    let sigma = (0.25 / count as f64).sqrt();
    assert!((first as f64 / count as f64 - 0.5).abs() <= 4.0 * sigma);
}

#[test]
fn samplers_agree_on_order_eight() {
    let p = ModelParams::new(8, 0.5).unwrap();
    let d = Diamond::from_params(p.clone());
    let count = 100_000;
    let s = Shuffler::new(&p).unwrap();
    let e = ExactSampler::new(d.clone()).unwrap();
    let fs = frequencies(&d, &sample_many(count, |i| s.sample(21, i)));
    let fe = frequencies(&d, &sample_many(count, |i| e.sample(22, i).unwrap()));
    for (a, b) in fs.iter().zip(&fe) {
        let p = 0.5 * (a + b);
        let sigma = (2.0 * p * (1.0 - p) / count as f64).sqrt().max(1e-12);
        assert!((a - b).abs() <= 4.5 * sigma, "{a} vs {b}");
    }
}

#[test]
fn seeds_determine_samples_across_thread_counts() {
    let p = ModelParams::new(24, 0.5).unwrap();
    let s = Shuffler::new(&p).unwrap();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| sample_many(16, |i| s.sample(9, i)));
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| sample_many(16, |i| s.sample(9, i)));
    assert_eq!(one, four);
    assert_eq!(sample_shuffling(&p, 9).unwrap(), one[0]);
    assert_ne!(one[0], one[1]);
    let d = Diamond::from_params(p);
    for c in &one {
        c.validate(&d).unwrap();
    }
}

#[test]
fn exact_sampler_refuses_large_diamonds() {
    assert!(ExactSampler::new(Diamond::new(33, 0.5).unwrap()).is_err());
}
