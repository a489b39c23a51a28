use std::f64::consts::TAU;

use aztec_lattice::{Color, Vertex};
use num_complex::Complex64;

use crate::{ctilde, EklCache, GasError};

/// `(k1, l1, k2, l2, h)` for a white `x` and black `y`.
pub fn kinv_indices(x: Vertex, y: Vertex) -> Result<(i64, i64, i64, i64, u8), GasError> {
    if x.color() != Some(Color::White) || y.color() != Some(Color::Black) {
        return Err(GasError::Parity(x.x1, x.x2, y.x1, y.x2));
    }
    let h = x.parity() ^ y.parity();
    let dx2 = x.x2 - y.x2;
    let dy1 = y.x1 - x.x1;
    let k1 = (dx2 - 1) / 2 + h as i64;
    let k2 = (dx2 + 1) / 2 - h as i64;
    let l1 = (dy1 - 1) / 2;
    let l2 = (dy1 + 1) / 2;
    Ok((k1, l1, k2, l2, h))
}

/// `K^{-1}(x, y) = -i^{1+h}(a^{e_y} E_{k1,l1} + a^{1-e_y} E_{k2,l2})`.
pub fn full_plane_kinv(cache: &mut EklCache, x: Vertex, y: Vertex) -> Result<Complex64, GasError> {
    let (k1, l1, k2, l2, h) = kinv_indices(x, y)?;
    let a = cache.a();
    let ey = y.parity() as i32;
    let e1 = cache.get(k1, l1)?;
    let e2 = cache.get(k2, l2)?;
    Ok(combine(a, h, ey, e1, e2))
}

pub(crate) fn combine(a: f64, h: u8, ey: i32, e1: f64, e2: f64) -> Complex64 {
    -Complex64::i().powu(1 + h as u32) * (a.powi(ey) * e1 + a.powi(1 - ey) * e2)
}

/// Plain torus trapezoid sum of the defining double integral, with the
/// `u1` exponent driven by `x1 - y1` and the `u2` exponent by `x2 - y2`.
pub fn full_plane_kinv_bruteforce(a: f64, x: Vertex, y: Vertex, n: usize) -> Result<Complex64, GasError> {
    if x.color() != Some(Color::White) || y.color() != Some(Color::Black) {
        return Err(GasError::Parity(x.x1, x.x2, y.x1, y.x2));
    }
    let h = (x.parity() ^ y.parity()) as i32;
    let ey = y.parity() as i32;
    let p1 = ((x.x1 - y.x1 + 1) / 2) as i32;
    let p2 = ((x.x2 - y.x2 + 1) / 2) as i32;
    let mut sum = Complex64::new(0.0, 0.0);
    for j1 in 0..n {
        let u1 = Complex64::from_polar(1.0, TAU * j1 as f64 / n as f64);
        for j2 in 0..n {
            let u2 = Complex64::from_polar(1.0, TAU * j2 as f64 / n as f64);
            let num = a.powi(ey) * u2.powi(1 - h) + a.powi(1 - ey) * u1 * u2.powi(h);
            sum += num / (ctilde(a, u1, u2) * u1.powi(p1) * u2.powi(p2));
        }
    }
    Ok(-Complex64::i().powu(1 + h as u32) * sum / (n * n) as f64)
}
