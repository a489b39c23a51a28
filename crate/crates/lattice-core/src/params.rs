use num_complex::Complex64;

use crate::LatticeError;

/// Weight `a` (with `b = 1`), diamond size and the derived constants that do
/// not degenerate at `a = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    pub a: f64,
    pub n: usize,
    /// `c = a / (1 + a^2)`.
    pub c: f64,
    /// `xi = -sqrt(1 - 2c) / 2`.
    pub xi: f64,
}

/// Scaling constants of the liquid-gas boundary. Only defined for `0 < a < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticConstants {
    pub a: f64,
    pub c: f64,
    pub xi: f64,
    pub c0: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// The ratio usually written as a calligraphic C.
    pub curly_c: f64,
    /// `g[e1][e2]`.
    pub g: [[Complex64; 2]; 2],
}

impl ModelParams {
    pub fn new(n: usize, a: f64) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::BadSize(0));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(LatticeError::BadWeight(a));
        }
        let c = a / (1.0 + a * a);
        Ok(ModelParams { a, n, c, xi: -0.5 * (1.0 - 2.0 * c).max(0.0).sqrt() })
    }

    /// `m = n / 4`, requiring `n ≡ 0 mod 4`.
    pub fn m(&self) -> Result<usize, LatticeError> {
        if self.n % 4 != 0 {
            return Err(LatticeError::NotMultipleOfFour(self.n));
        }
        Ok(self.n / 4)
    }

    pub fn asymptotic(&self) -> Result<AsymptoticConstants, LatticeError> {
        AsymptoticConstants::new(self.a)
    }
}

impl AsymptoticConstants {
    pub fn new(a: f64) -> Result<Self, LatticeError> {
        if !(a > 0.0 && a < 1.0) {
            return Err(LatticeError::NotGasPhase(a));
        }
        let c = a / (1.0 + a * a);
        let s = (1.0 - 2.0 * c).sqrt();
        let c0 = (1.0 - 2.0 * c).powf(2.0 / 3.0) / (2.0 * c * (1.0 + 2.0 * c)).powf(1.0 / 3.0);
        let lambda1 = s / (2.0 * c0);
        let lambda2 = (1.0 - 2.0 * c).powf(1.5) / (2.0 * c * c0 * c0);
        let curly_c = (1.0 - s) / (2.0 * c).sqrt();
        let r = (a * a + 1.0).sqrt();
        let off = (r + a - 1.0) / ((2.0 * a).sqrt() * (1.0 - a));
        let g = [
            [Complex64::new(0.0, (r + a) / (1.0 - a)), Complex64::new(off, 0.0)],
            [Complex64::new(-off, 0.0), Complex64::new(0.0, (r - 1.0) / ((1.0 - a) * a))],
        ];
        Ok(AsymptoticConstants { a, c, xi: -0.5 * s, c0, lambda1, lambda2, curly_c, g })
    }

    /// `sqrt(1 - 2c)`.
    pub fn root(&self) -> f64 {
        (1.0 - 2.0 * self.c).sqrt()
    }
}
