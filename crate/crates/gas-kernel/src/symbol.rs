use num_complex::Complex64;

use crate::{check_a, GasError};

/// The torus symbol at a fixed gas-phase weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusSymbol {
    a: f64,
}

impl TorusSymbol {
    pub fn new(a: f64) -> Result<Self, GasError> {
        check_a(a)?;
        Ok(TorusSymbol { a })
    }

    /// Unchecked constructor, used to probe `a >= 1`.
    pub fn probe(a: f64) -> Self {
        TorusSymbol { a }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn eval(&self, u1: Complex64, u2: Complex64) -> Complex64 {
        ctilde(self.a, u1, u2)
    }

    /// On the unit torus `c~ = 2(1 + a^2) + 4a cos t1 cos t2`.
    pub fn on_torus(&self, t1: f64, t2: f64) -> f64 {
        2.0 * (1.0 + self.a * self.a) + 4.0 * self.a * t1.cos() * t2.cos()
    }

    /// Minimum of the symbol over an `n x n` uniform torus grid.
    pub fn torus_minimum(&self, n: usize) -> f64 {
        let step = std::f64::consts::TAU / n as f64;
        let mut min = f64::INFINITY;
        for i in 0..n {
            for j in 0..n {
                min = min.min(self.on_torus(i as f64 * step, j as f64 * step));
            }
        }
        min
    }
}

/// `c~(u1, u2) = 2(1 + a^2) + a (u1 + 1/u1)(u2 + 1/u2)`.
pub fn ctilde(a: f64, u1: Complex64, u2: Complex64) -> Complex64 {
    2.0 * (1.0 + a * a) + a * (u1 + u1.inv()) * (u2 + u2.inv())
}

/// Roots of `u^2 + (1 + 2(a + 1/a) w + w^2) u + w^2`, ordered by modulus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasRoots {
    pub r1: Complex64,
    pub r2: Complex64,
}

pub fn gas_roots(a: f64, w: Complex64) -> GasRoots {
    let b = 1.0 + 2.0 * (a + 1.0 / a) * w + w * w;
    let mut s = (b * b - 4.0 * w * w).sqrt();
    // pick the sign that avoids cancellation in -(b + s)/2
    if (b.conj() * s).re < 0.0 {
        s = -s;
    }
    let big = -(b + s) / 2.0;
    let small = w * w / big;
    if small.norm() <= big.norm() {
        GasRoots { r1: small, r2: big }
    } else {
        GasRoots { r1: big, r2: small }
    }
}

/// Points where `r1 = r2`: the real negative roots of
/// `w^2 + 2(a + 1/a ∓ 1) w + 1`. These are the singularities of `f`.
pub fn branch_points(a: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, sign) in [-1.0, 1.0].into_iter().enumerate() {
        let big_a = a + 1.0 / a + sign;
        let d = (big_a * big_a - 1.0).sqrt();
        out[2 * i] = -big_a + d;
        out[2 * i + 1] = -big_a - d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_at_one() {
        let r = gas_roots(0.5, Complex64::new(1.0, 0.0));
        // u^2 + 7u + 1
        assert!((r.r1.re - (-7.0 + 45f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((r.r1.re + 0.14589803375031546).abs() < 1e-15);
        assert!((r.r1 * r.r2 - 1.0).norm() < 1e-14);
    }

    #[test]
    fn branch_points_at_half() {
        let mut b = branch_points(0.5);
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let want = [-6.854101966249685, -2.618033988749895, -0.3819660112501051, -0.1458980337503155];
        for (x, y) in b.iter().zip(want) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
