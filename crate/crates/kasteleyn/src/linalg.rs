use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::KastError;

/// `det = exp(log_abs) * phase`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDet {
    pub log_abs: f64,
    pub phase: Complex64,
}

impl LogDet {
    pub fn value(&self) -> Complex64 {
        self.phase * self.log_abs.exp()
    }
}

/// Log-domain determinant from an LU factorization with partial pivoting.
pub fn log_det(m: &DMatrix<Complex64>) -> LogDet {
    assert!(m.is_square());
    if m.nrows() == 0 {
        return LogDet { log_abs: 0.0, phase: Complex64::new(1.0, 0.0) };
    }
    let lu = m.clone().lu();
    let u = lu.u();
    let mut log_abs = 0.0;
    let mut phase: Complex64 = lu.p().determinant();
    for i in 0..u.nrows() {
        let d = u[(i, i)];
        let r = d.norm();
        if r == 0.0 {
            return LogDet { log_abs: f64::NEG_INFINITY, phase: Complex64::new(0.0, 0.0) };
        }
        log_abs += r.ln();
        phase *= d / r;
    }
    LogDet { log_abs, phase }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Inverse with one step of iterative refinement; returns the inverse and the
/// max-norm residual `|A X - I|`.
pub fn invert_refined(a: &DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, f64), KastError> {
    let n = a.nrows();
    let lu = a.clone().lu();
    let eye = DMatrix::<Complex64>::identity(n, n);
    let mut x = lu.solve(&eye).ok_or(KastError::Singular)?;
    let r = &eye - a * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }
    let res = max_abs(&(a * &x - &eye));
    if !res.is_finite() {
        return Err(KastError::Singular);
    }
    Ok((x, res))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_small_matrix() {
        let c = |r: f64, i: f64| Complex64::new(r, i);
        let m = DMatrix::from_row_slice(3, 3, &[c(0.0, 1.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(3.0, 0.0), c(0.0, 0.0), c(1.0, 1.0), c(1.0, 0.0)]);
        // cofactor expansion along the first row
        let want = c(0.0, 1.0) * (c(0.0, 0.0) - c(3.0, 0.0) * c(1.0, 1.0)) - c(2.0, 0.0) * (c(1.0, 0.0) - c(0.0, 0.0));
        let got = log_det(&m).value();
        assert!((got - want).norm() < 1e-13);
        let (inv, res) = invert_refined(&m).unwrap();
        assert!(res < 1e-14);
        assert!((&m * inv - DMatrix::identity(3, 3)).norm() < 1e-13);
    }
}
