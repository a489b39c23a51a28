use aztec_lattice::{Diamond, DimerConfig, Dir, HeightField};
use num_complex::Complex64;

use crate::{BoundaryError, DiscreteInterval, IntervalEmbed, LineSpec};

/// `mu_m({beta_q} x A_p)` for all `(p, q)`, stored as the integer sum of the
/// per-copy height differences together with the divisor `4M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureSample {
    pub copies: usize,
    /// `quanta[p][q] = sum_k Delta h(I_{p,q,k})`.
    pub quanta: Vec<Vec<i64>>,
}

impl MeasureSample {
    pub fn divisor(&self) -> i64 {
        4 * self.copies as i64
    }

    pub fn value(&self, p: usize, q: usize) -> f64 {
        self.quanta[p][q] as f64 / self.divisor() as f64
    }

    /// `sum_{p,q} w[p][q] mu_m({beta_q} x A_p)`.
    pub fn pair(&self, weights: &[Vec<Complex64>]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, row) in weights.iter().enumerate() {
            for (q, w) in row.iter().enumerate() {
                acc += w * self.value(p, q);
            }
        }
        acc
    }
}

/// `h(F_+) - h(F_-)`.
pub fn height_route(h: &HeightField, piece: &DiscreteInterval) -> Result<i64, BoundaryError> {
    let get = |f: (i64, i64)| {
        h.get(f.0, f.1).ok_or_else(|| BoundaryError::Setup(format!("end face ({}, {}) is not a face of the diamond", f.0, f.1)))
    };
    Ok(get(piece.f_plus)? - get(piece.f_minus)?)
}

/// `4 sum (-1)^eps` over covered edges `(y(z), x(z))` with `z` in the interval.
pub fn particle_route(d: &Diamond, config: &DimerConfig, line: &LineSpec, piece: &DiscreteInterval) -> Result<i64, BoundaryError> {
    let mut total = 0;
    for s in piece.s_lo..piece.s_hi {
        let z = line.point(s).ok_or_else(|| {
            BoundaryError::Setup(format!("s = {s} is not on line q = {}, copy k = {}", line.q + 1, line.k))
        })?;
        let dir = Dir::between(z.y, z.x).expect("x(z) and y(z) are adjacent");
        if config.covers(d, z.y, dir) {
            total += z.sign();
        }
    }
    Ok(4 * total)
}

/// Evaluates the measure on one configuration by both routes and fails hard
/// if they differ.
pub fn measure_from_config(
    d: &Diamond,
    config: &DimerConfig,
    lines: &[LineSpec],
    embeds: &[IntervalEmbed],
) -> Result<MeasureSample, BoundaryError> {
    let h = HeightField::new(d, config)?;
    let n_lines = lines.iter().map(|l| l.q + 1).max().unwrap_or(0);
    let copies = lines.iter().map(|l| l.k).max().unwrap_or(1);
    let mut quanta = vec![vec![0i64; n_lines]; embeds.len()];
    for e in embeds {
        for piece in &e.pieces {
            let line = &lines[piece.line];
            let hr = height_route(&h, piece)?;
            let pr = particle_route(d, config, line, piece)?;
            if hr != pr {
                return Err(BoundaryError::RouteMismatch { p: e.p + 1, q: line.q + 1, k: line.k, height: hr, particle: pr });
            }
            quanta[e.p][line.q] += hr;
        }
    }
    Ok(MeasureSample { copies, quanta })
}
