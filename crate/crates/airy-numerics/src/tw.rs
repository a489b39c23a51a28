//! One-point distribution moments from gap probabilities.

use crate::quad::composite;
use crate::{airy_kernel, gap_probability, gauss_legendre, AiryError, NystromOptions};

/// Integration range for the distribution function; the mass outside is
/// below `1e-9`.
pub const S_RANGE: (f64, f64) = (-8.0, 6.0);
/// Truncation of `[s, inf)`.
pub const ZETA_MAX: f64 = 12.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// Mean and variance from `F(s)` by parts:
/// `E s = [sF] - int F`, `E s^2 = [s^2 F] - int 2 s F`.
fn moments_from(points: &[(f64, f64, f64)], f_lo: f64, f_hi: f64) -> Moments {
    let (lo, hi) = S_RANGE;
    let int_f: f64 = points.iter().map(|&(_, w, f)| w * f).sum();
    let int_sf: f64 = points.iter().map(|&(s, w, f)| w * s * f).sum();
    let mean = hi * f_hi - lo * f_lo - int_f;
    let second = hi * hi * f_hi - lo * lo * f_lo - 2.0 * int_sf;
    Moments { mean, variance: second - mean * mean }
}

/// Moments from Nyström gap probabilities on composite Gauss-Legendre nodes in `s`.
pub fn moments(opts: NystromOptions) -> Result<Moments, AiryError> {
    let (lo, hi) = S_RANGE;
    let f = |s: f64| gap_probability(s, ZETA_MAX, opts).map(|r| r.value.re);
    let mut points = Vec::new();
    for (s, w) in composite(16, lo, hi, 2.0) {
        points.push((s, w, f(s)?));
    }
    Ok(moments_from(&points, f(lo)?, f(hi)?))
}

/// Coarse oracle: closed-form kernel, one Gauss-Legendre rule of fixed order
/// on `[s, 10]`, composite Simpson in `s` with step `1/16`.
pub fn moments_coarse() -> Result<Moments, AiryError> {
    let (lo, hi) = S_RANGE;
    let det = |s: f64| -> Result<f64, AiryError> {
        let nodes = gauss_legendre(48, s, 10.0);
        let n = nodes.len();
        let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let k = airy_kernel(nodes[i].0, nodes[j].0)?;
                m[(i, j)] = if i == j { 1.0 } else { 0.0 } - nodes[i].1.sqrt() * k * nodes[j].1.sqrt();
            }
        }
        Ok(m.determinant())
    };
    let steps = ((hi - lo) * 16.0) as usize;
    let h = (hi - lo) / steps as f64;
    let mut points = Vec::new();
    for i in 0..=steps {
        let s = lo + i as f64 * h;
        let w = h / 3.0 * if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        points.push((s, w, det(s)?));
    }
    let (f_lo, f_hi) = (points[0].2, points[steps].2);
    Ok(moments_from(&points, f_lo, f_hi))
}
