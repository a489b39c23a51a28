//! Generalized domino shuffling.
//!
//! The order-`k` diamond is cut into `k x k` cells; cell `(p, q)` is the face
//! centered at `c = (2p + 1, 2q + 1)` with corner vertices `R = c + (1, 0)`,
//! `L = c - (1, 0)` (black) and `T = c + (0, 1)`, `D = c - (0, 1)` (white).
//! Every edge lies in exactly one cell, in one of four slots:
//! `0 = R-T`, `1 = L-T`, `2 = L-D`, `3 = R-D`. Slots `0, 2` and `1, 3` are the
//! two opposite pairs.
//!
//! Urban renewal of cell `(P, Q)` with `Δ = w0 w2 + w1 w3` gives the order
//! `k - 1` weight `w'(p, q, s) = w(P, Q, s) / Δ(P, Q)` where
//! `(P, Q) = (p, q) + SHIFT[s]`. A shuffle step moves each dimer `(p, q, s)`
//! into cell `(p, q) + SHIFT[s]`, annihilates cells hit twice, keeps slot `s`
//! for the survivors and fills the remaining empty cells with a pair of
//! opposite dimers.
//!
//! Creation is greedy in row-major order: a cell is filled when its four
//! corners are still free. A free cell that is not one of the empty blocks
//! has all four edge-neighbors as empty blocks, and the one below it is
//! always visited first, so the greedy sweep recovers exactly the blocks.

use aztec_lattice::{Diamond, DimerConfig, Dir, ModelParams, Vertex};
use rand::RngCore;

use crate::{stream_rng, SamplerError};

const SHIFT: [(usize, usize); 4] = [(1, 1), (0, 1), (0, 0), (1, 0)];

/// Cells hit by two dimers are annihilated.
const SURVIVORS: [u8; 16] = {
    let mut t = [0u8; 16];
    let mut b = 0;
    while b < 16 {
        t[b] = if (b as u8).count_ones() == 2 { 0 } else { b as u8 };
        b += 1;
    }
    t
};

/// Explicit per-edge weights of an order-`k` diamond in cell form.
#[derive(Clone, Debug, PartialEq)]
pub struct CellWeights {
    pub k: usize,
    w: Vec<f64>,
}

impl CellWeights {
    pub fn from_fn(k: usize, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut w = Vec::with_capacity(4 * k * k);
        for q in 0..k {
            for p in 0..k {
                for s in 0..4 {
                    w.push(f(p, q, s));
                }
            }
        }
        CellWeights { k, w }
    }

    /// Weight `a` around cells with `p + q` even (the a-faces) and 1 elsewhere.
    pub fn two_periodic(n: usize, a: f64) -> Self {
        Self::from_fn(n, |p, q, _| if (p + q) % 2 == 0 { a } else { 1.0 })
    }

    pub fn get(&self, p: usize, q: usize, s: usize) -> f64 {
        self.w[(q * self.k + p) * 4 + s]
    }

    fn cell(&self, p: usize, q: usize) -> &[f64] {
        let o = (q * self.k + p) * 4;
        &self.w[o..o + 4]
    }

    /// Probability of filling cell `(p, q)` with slots `0, 2`.
    pub fn pair_probability(&self, p: usize, q: usize) -> f64 {
        let c = self.cell(p, q);
        c[0] * c[2] / (c[0] * c[2] + c[1] * c[3])
    }

    /// Urban renewal down to order `k - 1`, rescaled so the largest weight
    /// is 1 (a global factor does not change the measure).
    pub fn renew(&self) -> CellWeights {
        let k = self.k - 1;
        let mut out = CellWeights::from_fn(k, |p, q, s| {
            let (pp, qq) = (p + SHIFT[s].0, q + SHIFT[s].1);
            let c = self.cell(pp, qq);
            c[s] / (c[0] * c[2] + c[1] * c[3])
        });
        let top = out.w.iter().cloned().fold(0.0, f64::max);
        if top > 0.0 {
            out.w.iter_mut().for_each(|x| *x /= top);
        }
        out
    }

    /// The two cell types when every cell equals the cell of the same
    /// `(p + q) mod 2` class, which is invariance under `(p, q) -> (p + 1, q ± 1)`.
    pub fn periodic_classes(&self) -> Option<[[f64; 4]; 2]> {
        if self.k == 0 {
            return None;
        }
        let rep0: [f64; 4] = self.cell(0, 0).try_into().unwrap();
        let rep1: [f64; 4] = if self.k > 1 { self.cell(1, 0).try_into().unwrap() } else { rep0 };
        for q in 0..self.k {
            for p in 0..self.k {
                let r = if (p + q) % 2 == 0 { &rep0 } else { &rep1 };
                if self.cell(p, q) != r {
                    return None;
                }
            }
        }
        Some([rep0, rep1])
    }

    fn check(&self) -> Result<(), SamplerError> {
        match self.w.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            Some(&x) => Err(SamplerError::BadWeight(x, self.k)),
            None => Ok(()),
        }
    }
}

/// Creation probabilities of one order.
#[derive(Clone, Debug, PartialEq)]
pub enum Level {
    /// Indexed by `(p + q) mod 2`.
    Periodic([f64; 2]),
    /// Indexed by `q * k + p`.
    Full(Vec<f64>),
}

/// Creation probabilities for every order `1..=n`, computed once per weight
/// table and shared by all samples.
#[derive(Clone, Debug)]
pub struct ShuffleTable {
    pub n: usize,
    levels: Vec<Level>,
    thresholds: Vec<Level>,
}

impl ShuffleTable {
    pub fn new(top: CellWeights) -> Result<Self, SamplerError> {
        let n = top.k;
        let mut levels = Vec::with_capacity(n);
        let mut w = top;
        loop {
            w.check()?;
            let k = w.k;
            levels.push(match w.periodic_classes() {
                Some(_) => Level::Periodic([w.pair_probability(0, 0), if k > 1 { w.pair_probability(1, 0) } else { 0.0 }]),
                None => {
                    let mut v = Vec::with_capacity(k * k);
                    for q in 0..k {
                        for p in 0..k {
                            v.push(w.pair_probability(p, q));
                        }
                    }
                    Level::Full(v)
                }
            });
            if k == 1 {
                break;
            }
            w = w.renew();
        }
        levels.reverse();
        let scale = |x: f64| (x * 4294967296.0).round();
        let thresholds = levels
            .iter()
            .map(|l| match l {
                Level::Periodic(c) => Level::Periodic(c.map(scale)),
                Level::Full(v) => Level::Full(v.iter().map(|&x| scale(x)).collect()),
            })
            .collect();
        Ok(ShuffleTable { n, levels, thresholds })
    }

    /// Table for two-periodic weights. Fails if any renewal stage leaves the
    /// two-type periodic class.
    pub fn two_periodic(params: &ModelParams) -> Result<Self, SamplerError> {
        let t = Self::new(CellWeights::two_periodic(params.n, params.a))?;
        if t.levels.iter().any(|l| matches!(l, Level::Full(_))) {
            return Err(SamplerError::BadWeight(f64::NAN, 0));
        }
        Ok(t)
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k - 1]
    }

    pub fn prob(&self, k: usize, p: usize, q: usize) -> f64 {
        match &self.levels[k - 1] {
            Level::Periodic(c) => c[(p + q) % 2],
            Level::Full(v) => v[q * k + p],
        }
    }

    /// `round(prob * 2^32)`: a uniform 32-bit draw below it selects slots `0, 2`.
    fn threshold(&self, k: usize, p: usize, q: usize) -> u64 {
        match &self.thresholds[k - 1] {
            Level::Periodic(c) => c[(p + q) % 2] as u64,
            Level::Full(v) => v[q * k + p] as u64,
        }
    }
}

/// Shuffling sampler bound to a precomputed table.
#[derive(Clone, Debug)]
pub struct Shuffler {
    pub table: ShuffleTable,
}

impl Shuffler {
    pub fn new(params: &ModelParams) -> Result<Self, SamplerError> {
        Ok(Shuffler { table: ShuffleTable::two_periodic(params)? })
    }

    pub fn with_table(table: ShuffleTable) -> Self {
        Shuffler { table }
    }

    /// Sample number `index` of the run keyed by `seed`.
    pub fn sample(&self, seed: u64, index: u64) -> DimerConfig {
        let mut rng = stream_rng(seed, index);
        let n = self.table.n;
        // cell (p, q) lives at (q + 1) * stride + p + 1 so neighbor reads never
        // leave the buffer
        let stride = n + 2;
        let mut occ = vec![0u8; stride * stride];
        let mut next = vec![0u8; stride * stride];
        for k in 1..=n {
            // new cell (P, Q) receives slot 0 from (P-1, Q-1), slot 1 from
            // (P, Q-1), slot 2 from (P, Q) and slot 3 from (P-1, Q); cells of
            // the previous order outside its k-1 square are still zero
            for q in 0..k {
                let row = (q + 1) * stride + 1;
                for p in 0..k {
                    let i = row + p;
                    let bits = (occ[i - stride - 1] & 1) | (occ[i - stride] & 2) | (occ[i] & 4) | (occ[i - 1] & 8);
                    next[i] = SURVIVORS[bits as usize];
                }
            }
            std::mem::swap(&mut occ, &mut next);
            for q in 0..k {
                let row = (q + 1) * stride + 1;
                for p in 0..k {
                    let i = row + p;
                    // R is L of (p+1, q); L is R of (p-1, q); T is D of (p, q+1); D is T of (p, q-1)
                    let used = occ[i] | occ[i + 1] & 0b0110 | occ[i - 1] & 0b1001 | occ[i + stride] & 0b1100 | occ[i - stride] & 0b0011;
                    if used != 0 {
                        continue;
                    }
                    occ[i] = if (rng.next_u32() as u64) < self.table.threshold(k, p, q) { 0b0101 } else { 0b1010 };
                }
            }
        }
        let config = to_config(n, &occ, stride);
        if cfg!(debug_assertions) {
            let d = Diamond::new(n, 1.0).expect("n >= 1");
            config.validate(&d).expect("shuffling produced a perfect matching");
        }
        config
    }
}

fn to_config(n: usize, occ: &[u8], stride: usize) -> DimerConfig {
    let d = Diamond::new(n, 1.0).expect("n >= 1");
    let mut dirs = vec![Dir::PlusE1; d.size()];
    for q in 0..n {
        for p in 0..n {
            let bits = occ[(q + 1) * stride + p + 1];
            let (cx, cy) = (2 * p as i64 + 1, 2 * q as i64 + 1);
            let r = Vertex::new(cx + 1, cy);
            let l = Vertex::new(cx - 1, cy);
            for (s, (b, dir)) in [(r, Dir::PlusE2), (l, Dir::PlusE1), (l, Dir::MinusE2), (r, Dir::MinusE1)].into_iter().enumerate() {
                if bits & (1 << s) != 0 {
                    dirs[d.black_index(b).expect("cell corner inside")] = dir;
                }
            }
        }
    }
    DimerConfig::new(n, dirs)
}

/// One shuffling sample of the two-periodic measure.
pub fn sample_shuffling(params: &ModelParams, seed: u64) -> Result<DimerConfig, SamplerError> {
    Ok(Shuffler::new(params)?.sample(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_class_survives_renewal() {
        let mut w = CellWeights::two_periodic(12, 0.3);
        while w.k > 1 {
            assert!(w.periodic_classes().is_some(), "order {}", w.k);
            w = w.renew();
        }
    }

    #[test]
    fn uniform_creation_is_fair() {
        let t = ShuffleTable::two_periodic(&ModelParams::new(6, 1.0).unwrap()).unwrap();
        for k in 1..=6 {
            match t.level(k) {
                Level::Periodic(c) => assert!(c[..k.min(2)].iter().all(|&x| (x - 0.5).abs() < 1e-15)),
                Level::Full(_) => panic!("uniform weights are periodic"),
            }
        }
    }

    #[test]
    fn generic_weights_use_full_tables() {
        let w = CellWeights::from_fn(3, |p, q, s| 1.0 + (p + 2 * q + 3 * s) as f64 * 0.1);
        let t = ShuffleTable::new(w).unwrap();
        assert!(matches!(t.level(3), Level::Full(_)));
        let c = Shuffler::with_table(t).sample(1, 0);
        c.validate(&Diamond::new(3, 1.0).unwrap()).unwrap();
    }
}
