use std::collections::HashMap;

use aztec_kasteleyn::{build_k, invert_k_relative, KernelMatrix};
use aztec_lattice::{Diamond, Vertex};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::conjugate::{gammas, gauge_factor, Gammas};
use crate::{BoundaryError, IntervalEmbed, LinePoint, LineSpec, ScalingFrame};

/// Largest diamond for which the dense inverse is formed.
pub const FINITE_CAP: usize = 32;

/// Exact inverse Kasteleyn matrix of the finite diamond.
#[derive(Clone, Debug)]
pub struct FiniteKernel {
    pub diamond: Diamond,
    pub kinv: KernelMatrix,
    pub residual: f64,
}

impl FiniteKernel {
    pub fn new(frame: &ScalingFrame) -> Result<Self, BoundaryError> {
        let n = frame.n();
        if n > FINITE_CAP {
            return Err(BoundaryError::TooLarge { n, cap: FINITE_CAP, what: "the dense inverse" });
        }
        let diamond = Diamond::from_params(frame.params.clone());
        let (kinv, residual) = invert_k_relative(&build_k(&diamond), 1e-12)?;
        Ok(FiniteKernel { diamond, kinv, residual })
    }

    /// `K^{-1}(x, y)` for white `x` and black `y`.
    pub fn inverse(&self, x: Vertex, y: Vertex) -> Result<Complex64, BoundaryError> {
        Ok(self.kinv.get(x, y)?)
    }

    /// Particle kernel `a i K^{-1}(x(z'), y(z))`.
    pub fn tilde(&self, z: &LinePoint, zp: &LinePoint) -> Result<Complex64, BoundaryError> {
        Ok(Complex64::new(0.0, self.diamond.a()) * self.inverse(zp.x, z.y)?)
    }
}

/// Which kernel enters the determinant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KernelChoice {
    /// The particle kernel itself.
    #[default]
    Particle,
    /// The conjugated kernel with the scaling prefactors.
    Gauge,
}

/// A distinct point of the union of all embedded intervals with the summed
/// value of `psi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportPoint {
    /// First line copy the point was found on.
    pub line: usize,
    pub point: LinePoint,
    pub gammas: Gammas,
    pub psi: Complex64,
}

/// Points where `psi = sum_{k,p,q} w_{p,q} (-1)^eps 1_{p,q,k}` does not vanish.
/// Copies that coincide on small diamonds are merged and their terms added.
pub fn psi_support(
    frame: &ScalingFrame,
    lines: &[LineSpec],
    embeds: &[IntervalEmbed],
    weights: &[Vec<Complex64>],
) -> Result<Vec<SupportPoint>, BoundaryError> {
    let n_lines = lines.iter().map(|l| l.q + 1).max().unwrap_or(0);
    if weights.len() != embeds.len() || weights.iter().any(|r| r.len() != n_lines) {
        return Err(BoundaryError::Setup(format!(
            "weights must be {} rows of {} entries, one row per interval",
            embeds.len(),
            n_lines
        )));
    }
    let mut index: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut out: Vec<SupportPoint> = Vec::new();
    for e in embeds {
        for piece in &e.pieces {
            let line = &lines[piece.line];
            let w = weights[e.p][line.q];
            for s in piece.s_lo..piece.s_hi {
                let z = *line.point(s).ok_or(BoundaryError::IntervalOutside { p: e.p + 1, q: line.q + 1, k: line.k })?;
                let i = *index.entry((z.x, z.y)).or_insert_with(|| {
                    out.push(SupportPoint {
                        line: piece.line,
                        point: z,
                        gammas: gammas(frame, line, &z),
                        psi: Complex64::new(0.0, 0.0),
                    });
                    out.len() - 1
                });
                out[i].psi += w * z.sign() as f64;
            }
        }
    }
    out.retain(|p| p.psi != Complex64::new(0.0, 0.0));
    Ok(out)
}

/// `E exp(sum w_{p,q} mu_m({beta_q} x A_p)) = det(I + (e^{psi/M} - 1) K)` with
/// `K` the particle kernel or its conjugated form. Rows and columns outside
/// the support of `psi` do not change the determinant and are left out.
pub fn finite_fredholm(
    frame: &ScalingFrame,
    kernel: &FiniteKernel,
    lines: &[LineSpec],
    embeds: &[IntervalEmbed],
    weights: &[Vec<Complex64>],
    choice: KernelChoice,
) -> Result<Complex64, BoundaryError> {
    if kernel.diamond.n() != frame.n() || kernel.diamond.a() != frame.a() {
        return Err(BoundaryError::Setup("kernel was built for another diamond".into()));
    }
    let support = psi_support(frame, lines, embeds, weights)?;
    let s = support.len();
    if s == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let m = frame.copies as f64;
    let mut a = DMatrix::<Complex64>::identity(s, s);
    for (i, zi) in support.iter().enumerate() {
        let f = (zi.psi / m).exp() - 1.0;
        for (j, zj) in support.iter().enumerate() {
            let mut k = kernel.tilde(&zi.point, &zj.point)?;
            if choice == KernelChoice::Gauge {
                k *= gauge_factor(frame, (&zi.point, &zi.gammas), (&zj.point, &zj.gammas))?;
            }
            a[(i, j)] += f * k;
        }
    }
    let det = a.lu().determinant();
    if !det.re.is_finite() || !det.im.is_finite() {
        return Err(BoundaryError::Setup("determinant overflowed".into()));
    }
    Ok(det)
}
