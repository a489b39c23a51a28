use aztec_lattice::{Diamond, Vertex};

use crate::{BoundaryError, ScalingFrame};

/// A point `z` of a line copy with its edge `(y(z), x(z))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinePoint {
    pub s: i64,
    pub t: i64,
    pub eps: u8,
    /// `C = rho + s - 2 tau`, so that `z = (C + 1/2) e1 - beta_m e2`.
    pub c: i64,
    pub x: Vertex,
    pub y: Vertex,
}

impl LinePoint {
    pub fn new(frame: &ScalingFrame, beta_m: i64, tau: i64, s: i64) -> Self {
        let c = frame.rho + s - 2 * tau;
        let eps = s.rem_euclid(2) as u8;
        let t = (s + eps as i64) / 2;
        let lo = Vertex::new(c + 1 + beta_m, c - beta_m);
        let hi = Vertex::new(c + beta_m, c + 1 - beta_m);
        let (x, y) = if eps == 0 { (lo, hi) } else { (hi, lo) };
        LinePoint { s, t, eps, c, x, y }
    }

    /// `2z`, which has integer coordinates.
    pub fn z2(&self, beta_m: i64) -> (i64, i64) {
        (2 * self.c + 1 + 2 * beta_m, 2 * self.c + 1 - 2 * beta_m)
    }

    /// `(-1)^eps`.
    pub fn sign(&self) -> i64 {
        1 - 2 * self.eps as i64
    }
}

/// Copy `k` of line `q`, clipped to the diamond. Points are stored in
/// increasing `s` without gaps.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSpec {
    /// Index into the list of `beta` values.
    pub q: usize,
    /// Copy number, `1..=M`.
    pub k: usize,
    pub beta: f64,
    pub beta_m: i64,
    pub tau: i64,
    pub points: Vec<LinePoint>,
}

impl LineSpec {
    pub fn point(&self, s: i64) -> Option<&LinePoint> {
        let first = self.points.first()?.s;
        usize::try_from(s - first).ok().and_then(|i| self.points.get(i))
    }

    /// Full `s` range of the unclipped line.
    pub fn s_bounds(frame: &ScalingFrame, tau: i64) -> (i64, i64) {
        (-frame.rho + 2 * tau - 1, 8 * frame.m as i64 - frame.rho + 2 * tau)
    }
}

/// All copies `k = 1..=M` of every line, ordered by `q` then `k`.
///
/// Each copy must pass through the diamond at `s = 0`, the point where the
/// boundary window is centred; otherwise the error names the copy.
pub fn build_lines(frame: &ScalingFrame, betas: &[f64]) -> Result<Vec<LineSpec>, BoundaryError> {
    if betas.is_empty() {
        return Err(BoundaryError::Setup("no lines given".into()));
    }
    if betas.iter().any(|b| !b.is_finite()) || betas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BoundaryError::Setup(format!("line positions must be finite and strictly increasing: {betas:?}")));
    }
    let d = Diamond::from_params(frame.params.clone());
    let mut out = Vec::with_capacity(betas.len() * frame.copies);
    for (q, &beta) in betas.iter().enumerate() {
        let tau = frame.tau(beta);
        for k in 1..=frame.copies {
            let beta_m = frame.beta_m(beta, k);
            let inside = |p: &LinePoint| d.contains(p.x) && d.contains(p.y);
            let centre = LinePoint::new(frame, beta_m, tau, 0);
            if !inside(&centre) {
                return Err(BoundaryError::LineOutside {
                    q: q + 1,
                    k,
                    reason: format!(
                        "offset beta_m = {beta_m} puts the edge ({}, {})-({}, {}) at s = 0 outside a diamond of size {}",
                        centre.y.x1,
                        centre.y.x2,
                        centre.x.x1,
                        centre.x.x2,
                        d.n()
                    ),
                });
            }
            let (lo, hi) = LineSpec::s_bounds(frame, tau);
            let points: Vec<LinePoint> =
                (lo..=hi).map(|s| LinePoint::new(frame, beta_m, tau, s)).filter(|p| inside(p)).collect();
            out.push(LineSpec { q, k, beta, beta_m, tau, points });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use aztec_lattice::Color;

    use super::*;

    #[test]
    fn parity_classes_on_small_diamond() {
        let f = ScalingFrame::new(2, 0.5, Some(3)).unwrap();
        let lines = build_lines(&f, &[0.0]).unwrap();
        let mut seen = 0;
        for l in &lines {
            let prev: Vec<i64> = l.points.iter().map(|p| p.s).collect();
            assert!(prev.windows(2).all(|w| w[1] == w[0] + 1));
            for p in &l.points {
                assert_eq!(p.x.color(), Some(Color::White));
                assert_eq!(p.y.color(), Some(Color::Black));
                assert_eq!(p.x.parity(), p.eps);
                assert_eq!(p.y.parity(), p.eps);
                assert_eq!(aztec_kasteleyn::kasteleyn_entry(0.5, p.y, p.x), num_complex::Complex64::new(0.0, 0.5));
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn copy_outside_is_named() {
        // at m = 32 the fourth copy sits at beta_m = 116 > rho = 96
        let f = ScalingFrame::new(32, 0.5, None).unwrap();
        assert_eq!(f.copies, 4);
        match build_lines(&f, &[0.0]) {
            Err(BoundaryError::LineOutside { q: 1, k: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
