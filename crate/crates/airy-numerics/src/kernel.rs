use std::f64::consts::PI;

use crate::airy::airy_or_zero;
use crate::quad::gauss_legendre;
use crate::{airy, AiryError};

const PANEL_ORDER: usize = 24;

/// `A~(t1, z1; t2, z2) = int_0^inf e^{-lambda (t1 - t2)} Ai(z1 + lambda) Ai(z2 + lambda) dlambda`
/// by unit-width Gauss-Legendre panels, stopped once a panel contributes less
/// than `1e-13` of the running total and both arguments have passed the
/// point where Airy decay beats the exponential weight.
pub fn kernel_atilde(t1: f64, z1: f64, t2: f64, z2: f64) -> Result<f64, AiryError> {
    let dt = t1 - t2;
    let floor = 8.0f64.max(dt.min(0.0).powi(2));
    let mut total = 0.0;
    let mut lo = 0.0;
    loop {
        let panel: f64 = gauss_legendre(PANEL_ORDER, lo, lo + 1.0)
            .into_iter()
            .map(|(l, w)| w * (-l * dt).exp() * airy_or_zero(z1 + l).0 * airy_or_zero(z2 + l).0)
            .sum();
        total += panel;
        lo += 1.0;
        let past = z1.min(z2) + lo >= floor;
        if past && panel.abs() <= 1e-13 * total.abs() {
            return Ok(total);
        }
        if z1.min(z2) + lo > crate::AIRY_RANGE {
            return if past && panel.abs() <= 1e-9 * total.abs().max(1e-300) {
                Ok(total)
            } else {
                Err(AiryError::NonConvergence { what: "A~ lambda integral".into(), change: panel.abs(), nodes: lo as usize * PANEL_ORDER })
            };
        }
    }
}

/// Gaussian part: zero unless `t1 < t2`, then
/// `exp(-(z1 - z2)^2 / 4d - d (z1 + z2) / 2 + d^3 / 12) / sqrt(4 pi d)`, `d = t2 - t1`.
pub fn kernel_phi(t1: f64, z1: f64, t2: f64, z2: f64) -> f64 {
    if t1 >= t2 {
        return 0.0;
    }
    let d = t2 - t1;
    (-(z1 - z2).powi(2) / (4.0 * d) - d * (z1 + z2) / 2.0 + d.powi(3) / 12.0).exp() / (4.0 * PI * d).sqrt()
}

/// Extended Airy kernel `A~ - phi`.
pub fn extended_airy(t1: f64, z1: f64, t2: f64, z2: f64) -> Result<f64, AiryError> {
    Ok(kernel_atilde(t1, z1, t2, z2)? - kernel_phi(t1, z1, t2, z2))
}

/// Closed-form equal-time Airy kernel
/// `(Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y)`, with `Ai'(x)^2 - x Ai(x)^2` on
/// the diagonal.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64, AiryError> {
    let ex = airy(x)?;
    if x == y {
        return Ok(ex.aip * ex.aip - x * ex.ai * ex.ai);
    }
    let ey = airy(y)?;
    Ok((ex.ai * ey.aip - ex.aip * ey.ai) / (x - y))
}
