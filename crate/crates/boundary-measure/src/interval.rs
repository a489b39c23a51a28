use crate::{BoundaryError, LineSpec, ScalingFrame};

/// Points `z_{q,k}(s)` with `s_lo <= s < s_hi` on one line copy, bounded by the
/// a-faces `F_- = t1 e1 - beta_m e2` and `F_+ = t2 e1 - beta_m e2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteInterval {
    /// Index into the line list.
    pub line: usize,
    pub s_lo: i64,
    pub s_hi: i64,
    pub t1: i64,
    pub t2: i64,
    pub f_minus: (i64, i64),
    pub f_plus: (i64, i64),
}

impl DiscreteInterval {
    /// Interval between the odd positions `t1 <= t2` along the diagonal.
    pub fn between(frame: &ScalingFrame, lines: &[LineSpec], line: usize, t1: i64, t2: i64) -> Result<Self, BoundaryError> {
        if t1.rem_euclid(2) != 1 || t2.rem_euclid(2) != 1 || t1 > t2 {
            return Err(BoundaryError::Setup(format!("interval ends {t1}, {t2} must be odd and ordered")));
        }
        let l = &lines[line];
        let shift = frame.rho - 2 * l.tau;
        let b = l.beta_m;
        Ok(DiscreteInterval {
            line,
            s_lo: t1 - shift,
            s_hi: t2 - shift,
            t1,
            t2,
            f_minus: (t1 + b, t1 - b),
            f_plus: (t2 + b, t2 - b),
        })
    }

    pub fn len(&self) -> usize {
        (self.s_hi - self.s_lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.s_hi == self.s_lo
    }

    pub fn contains(&self, s: i64) -> bool {
        (self.s_lo..self.s_hi).contains(&s)
    }
}

/// Embedding of `A_p = [alpha_l, alpha_r]` on every line copy.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalEmbed {
    pub p: usize,
    pub alpha: (f64, f64),
    pub s_lo: i64,
    pub s_hi: i64,
    /// One entry per line copy, in line order.
    pub pieces: Vec<DiscreteInterval>,
}

/// Embeds each interval on all lines. Every embedded point must lie in the
/// diamond.
pub fn embed_intervals(frame: &ScalingFrame, lines: &[LineSpec], intervals: &[(f64, f64)]) -> Result<Vec<IntervalEmbed>, BoundaryError> {
    let mut out = Vec::with_capacity(intervals.len());
    for (p, &alpha) in intervals.iter().enumerate() {
        if !alpha.0.is_finite() || !alpha.1.is_finite() || alpha.0 >= alpha.1 {
            return Err(BoundaryError::Setup(format!("interval [{}, {}] must be finite and non-degenerate", alpha.0, alpha.1)));
        }
        let (s_lo, s_hi) = frame.s_range(alpha);
        let mut pieces = Vec::with_capacity(lines.len());
        for (li, l) in lines.iter().enumerate() {
            let shift = frame.rho - 2 * l.tau;
            let piece = DiscreteInterval::between(frame, lines, li, s_lo + shift, s_hi + shift)?;
            if (s_lo..s_hi).any(|s| l.point(s).is_none()) {
                return Err(BoundaryError::IntervalOutside { p: p + 1, q: l.q + 1, k: l.k });
            }
            pieces.push(piece);
        }
        out.push(IntervalEmbed { p, alpha, s_lo, s_hi, pieces });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_lines;

    #[test]
    fn end_faces_are_a_faces() {
        let f = ScalingFrame::new(8, 0.5, Some(1)).unwrap();
        let lines = build_lines(&f, &[0.0]).unwrap();
        let emb = embed_intervals(&f, &lines, &[(-1.0, 1.0), (1.5, 2.0)]).unwrap();
        for e in &emb {
            for d in &e.pieces {
                for (i, j) in [d.f_minus, d.f_plus] {
                    assert_eq!(i.rem_euclid(2), 1);
                    assert_eq!((i + j).rem_euclid(4), 2);
                }
                assert_eq!(d.len() % 2, 0);
            }
        }
    }

    #[test]
    fn interval_outside_is_reported() {
        let f = ScalingFrame::new(1, 0.5, Some(1)).unwrap();
        let lines = build_lines(&f, &[0.0]).unwrap();
        assert!(matches!(embed_intervals(&f, &lines, &[(-1.0, 1.0)]), Err(BoundaryError::IntervalOutside { p: 1, q: 1, k: 1 })));
        assert!(embed_intervals(&f, &lines, &[(1.1, 4.0)]).is_ok());
    }
}
