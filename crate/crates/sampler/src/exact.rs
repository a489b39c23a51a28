use aztec_kasteleyn::{build_k, invert_k, kasteleyn_entry};
use aztec_lattice::{Diamond, DimerConfig, Dir};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::{stream_rng, SamplerError};

/// Exact sequential sampler driven by the inverse Kasteleyn matrix.
///
/// Black vertices are visited in index order. Given the edges already placed,
/// edge `(b, w)` is present with probability `K(b, w) M(w, b)` where `M` is the
/// inverse of `K` with the matched rows and columns removed. Removing one more
/// pair `(b, w)` is the rank-one Schur update `M -= M[:, b] M[w, :] / M[w, b]`.
#[derive(Clone, Debug)]
pub struct ExactSampler {
    pub diamond: Diamond,
    kinv: DMatrix<Complex64>,
}

impl ExactSampler {
    pub const CAP: usize = 32;

    pub fn new(diamond: Diamond) -> Result<Self, SamplerError> {
        if diamond.n() > Self::CAP {
            return Err(SamplerError::TooLarge { n: diamond.n(), cap: Self::CAP });
        }
        let kinv = invert_k(&build_k(&diamond))?.data;
        Ok(ExactSampler { diamond, kinv })
    }

    pub fn sample(&self, seed: u64, index: u64) -> Result<DimerConfig, SamplerError> {
        let d = &self.diamond;
        let s = d.size();
        let mut rng = stream_rng(seed, index);
        let mut m = self.kinv.clone();
        let mut white_free = vec![true; s];
        let mut dirs = Vec::with_capacity(s);
        for bi in 0..s {
            let b = d.black(bi);
            let mut options: Vec<(Dir, usize, f64)> = Vec::with_capacity(4);
            for (dir, w) in d.neighbors(b) {
                let wi = d.white_index(w).unwrap();
                if !white_free[wi] {
                    continue;
                }
                let p = (kasteleyn_entry(d.a(), b, w) * m[(wi, bi)]).re;
                if !(-1e-9..=1.0 + 1e-9).contains(&p) {
                    return Err(SamplerError::Probability { p, black: bi });
                }
                options.push((dir, wi, p.max(0.0)));
            }
            let total: f64 = options.iter().map(|o| o.2).sum();
            if options.is_empty() || (total - 1.0).abs() > 1e-6 {
                return Err(SamplerError::Probability { p: total, black: bi });
            }
            let mut u = rng.random::<f64>() * total;
            let mut pick = options[options.len() - 1];
            for o in &options {
                if u < o.2 {
                    pick = *o;
                    break;
                }
                u -= o.2;
            }
            let (dir, wi, _) = pick;
            dirs.push(dir);
            white_free[wi] = false;
            let pivot = m[(wi, bi)];
            let rows: Vec<usize> = (0..s).filter(|&r| white_free[r]).collect();
            let col: Vec<Complex64> = rows.iter().map(|&r| m[(r, bi)]).collect();
            for c in bi + 1..s {
                let f = m[(wi, c)] / pivot;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (k, &r) in rows.iter().enumerate() {
                    m[(r, c)] -= col[k] * f;
                }
            }
        }
        let config = DimerConfig::new(d.n(), dirs);
        if cfg!(debug_assertions) {
            config.validate(d)?;
        }
        Ok(config)
    }
}
