use num_complex::Complex64;

use crate::AiryError;

/// Lines `beta_1 < ... < beta_L` and the truncation window `[zeta_min, zeta_max]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineGrid {
    pub betas: Vec<f64>,
    pub zeta_min: f64,
    pub zeta_max: f64,
}

impl LineGrid {
    pub fn new(betas: Vec<f64>, zeta_min: f64, zeta_max: f64) -> Result<Self, AiryError> {
        if betas.is_empty() {
            return Err(AiryError::Grid("no lines".into()));
        }
        if betas.iter().any(|b| !b.is_finite()) || betas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AiryError::Grid(format!("lines must be finite and strictly increasing: {betas:?}")));
        }
        if !(zeta_min < zeta_max) || zeta_min < -crate::AIRY_RANGE || zeta_max > crate::AIRY_RANGE {
            return Err(AiryError::Grid(format!("window [{zeta_min}, {zeta_max}] must lie inside [-30, 30]")));
        }
        Ok(LineGrid { betas, zeta_min, zeta_max })
    }

    /// Window from the intervals: left margin 5, right end at least 10.
    pub fn for_function(betas: Vec<f64>, psi: &TestFunction) -> Result<Self, AiryError> {
        let lo = psi.intervals.iter().map(|i| i.0).fold(f64::INFINITY, f64::min) - 5.0;
        let hi = psi.intervals.iter().map(|i| i.1).filter(|x| x.is_finite()).fold(10.0, f64::max);
        LineGrid::new(betas, lo.max(-crate::AIRY_RANGE), hi)
    }

    pub fn lines(&self) -> usize {
        self.betas.len()
    }
}

/// `Psi = sum_{p,q} w_{p,q} 1_{beta_q x A_p}`, with `weights[p][q]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    pub intervals: Vec<(f64, f64)>,
    pub weights: Vec<Vec<Complex64>>,
    pub radius: f64,
    /// Notes raised while validating, such as weights above 0.5.
    pub warnings: Vec<String>,
}

impl TestFunction {
    pub const DEFAULT_RADIUS: f64 = 1.0;

    /// Intervals may extend to `+inf` on the right; they are clipped to the
    /// grid window when discretised.
    pub fn new(intervals: Vec<(f64, f64)>, weights: Vec<Vec<Complex64>>, radius: f64) -> Result<Self, AiryError> {
        if intervals.is_empty() || intervals.len() != weights.len() {
            return Err(AiryError::TestFunction(format!("{} intervals but {} weight rows", intervals.len(), weights.len())));
        }
        for &(l, r) in &intervals {
            if !l.is_finite() || r.is_nan() || l >= r {
                return Err(AiryError::TestFunction(format!("bad interval [{l}, {r}]")));
            }
        }
        let mut sorted = intervals.clone();
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if sorted.windows(2).any(|w| w[0].1 > w[1].0) {
            return Err(AiryError::TestFunction("intervals overlap".into()));
        }
        let lines = weights[0].len();
        if weights.iter().any(|row| row.len() != lines) {
            return Err(AiryError::TestFunction("ragged weight matrix".into()));
        }
        let mut warnings = Vec::new();
        for w in weights.iter().flatten() {
            if w.norm() > radius {
                return Err(AiryError::OutsideRadius { modulus: w.norm(), radius });
            }
            if w.norm() > 0.5 && warnings.is_empty() {
                warnings.push(format!("weight |w| = {:.3} above 0.5; the Laplace functional is only known to exist for small |w|", w.norm()));
            }
        }
        Ok(TestFunction { intervals, weights, radius, warnings })
    }

    /// The same weight `w` on every interval and line.
    pub fn uniform(intervals: Vec<(f64, f64)>, lines: usize, w: Complex64) -> Result<Self, AiryError> {
        let rows = vec![vec![w; lines]; intervals.len()];
        TestFunction::new(intervals, rows, Self::DEFAULT_RADIUS)
    }

    pub fn lines(&self) -> usize {
        self.weights[0].len()
    }
}
