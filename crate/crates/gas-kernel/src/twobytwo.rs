use aztec_lattice::AsymptoticConstants;
use num_complex::Complex64;

use crate::{check_a, f_eval, GasError};

/// Entries `a i (sqrt(1-2c)/2) g_{e1,e2} / C^{2-e1-e2}`.
pub fn g_matrix(a: f64) -> Result<[[Complex64; 2]; 2], GasError> {
    check_a(a)?;
    let k = AsymptoticConstants::new(a).map_err(|_| GasError::NotGasPhase(a))?;
    let s = (1.0 - 2.0 * k.c).sqrt() / 2.0;
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (e1, row) in m.iter_mut().enumerate() {
        for (e2, v) in row.iter_mut().enumerate() {
            *v = Complex64::new(0.0, a * s) * k.g[e1][e2] / k.curly_c.powi(2 - e1 as i32 - e2 as i32);
        }
    }
    Ok(m)
}

/// Eigenvalues of [`g_matrix`], larger real part first.
pub fn g_matrix_eigencheck(a: f64) -> Result<(Complex64, Complex64), GasError> {
    let m = g_matrix(a)?;
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr - 4.0 * det).sqrt();
    let (x, y) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    Ok(if x.re >= y.re { (x, y) } else { (y, x) })
}

/// Cyclic product over the parity vector:
/// `prod_i (a i / 2) sqrt(1-2c) g_{e_i,e_{i+1}} C^{e_i + e_{i+1} - 2}`.
pub fn q_product(a: f64, eps: &[u8]) -> Result<Complex64, GasError> {
    let m = g_matrix(a)?;
    let s = eps.len();
    Ok((0..s).map(|i| m[eps[i] as usize][eps[(i + 1) % s] as usize]).product())
}

/// Brute-force sum of [`q_product`] over all `2^s` parity vectors.
pub fn q_sum(a: f64, s: usize) -> Result<Complex64, GasError> {
    let mut total = Complex64::new(0.0, 0.0);
    for bits in 0..1u32 << s {
        let eps: Vec<u8> = (0..s).map(|i| ((bits >> i) & 1) as u8).collect();
        total += q_product(a, &eps)?;
    }
    Ok(total)
}

/// `det(I + (e^{w eta / M} - 1) F_omega)` with
/// `F_omega(e1, e2) = a i^{h(e1,e2)} f_{e1,e2}(omega)` and `eta(e) = (-1)^e`.
pub fn f_omega_determinant(a: f64, omega: Complex64, w: Complex64, m: u32) -> Result<Complex64, GasError> {
    let mut f = [[Complex64::new(0.0, 0.0); 2]; 2];
    for e1 in 0..2u8 {
        for e2 in 0..2u8 {
            f[e1 as usize][e2 as usize] = a * Complex64::i().powu((e1 ^ e2) as u32) * f_eval(a, e1, e2, omega)?;
        }
    }
    let scale = [(w / m as f64).exp() - 1.0, (-w / m as f64).exp() - 1.0];
    let mut mat = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            mat[r][c] = if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) } + scale[r] * f[r][c];
        }
    }
    Ok(mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0])
}
