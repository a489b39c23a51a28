use num_complex::Complex64;

use crate::{check_a, gas_roots, ctilde, GasError, MAX_NODES, MIN_NODES};

fn h(e1: u8, e2: u8) -> i32 {
    (e1 ^ e2) as i32
}

/// Closed form through the root `r1` inside the unit circle:
///
/// `f = (a^{e-1} r1^{(1-e)(1-e')} w^{2 - 2(1-e)(1-e') - h - e} + a^{-e} w^{1+h-e} r1^{e e'}) / (r1 - r2)`.
pub fn f_closed(a: f64, e: u8, ep: u8, w: Complex64) -> Complex64 {
    let GasRoots { r1, r2 } = gas_roots(a, w);
    let (ei, epi) = (e as i32, ep as i32);
    let hh = h(e, ep);
    let both_zero = (1 - ei) * (1 - epi);
    let t1 = a.powi(ei - 1) * r1.powi(both_zero) * w.powi(2 - 2 * both_zero - hh - ei);
    let t2 = a.powi(-ei) * w.powi(1 + hh - ei) * r1.powi(ei * epi);
    (t1 + t2) / (r1 - r2)
}

use crate::GasRoots;

/// Contour definition: the mean over `u` on the circle of radius `sqrt|w|` of
/// `(a^e u^{-2(1-e)(1-e')} w^{1-e-h} + a^{1-e} u^{2ee'} w^{h-e}) / c~(u, w/u)`.
pub fn f_integral(a: f64, e: u8, ep: u8, w: Complex64, nodes: usize) -> Complex64 {
    let (ei, epi) = (e as i32, ep as i32);
    let hh = h(e, ep);
    let r = w.norm().sqrt();
    let c1 = a.powi(ei) * w.powi(1 - ei - hh);
    let c2 = a.powi(1 - ei) * w.powi(hh - ei);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let u = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / nodes as f64);
        let num = c1 * u.powi(-2 * (1 - ei) * (1 - epi)) + c2 * u.powi(2 * ei * epi);
        sum += num / ctilde(a, u, w / u);
    }
    sum / nodes as f64
}

/// `f_{e,e'}(w)` for `|w| = 1`, by the closed form unless the two roots are
/// nearly equal in modulus, in which case the contour integral is doubled
/// to convergence.
pub fn f_eval(a: f64, e: u8, ep: u8, w: Complex64) -> Result<Complex64, GasError> {
    check_a(a)?;
    if (w.norm() - 1.0).abs() > 1e-12 {
        return Err(GasError::OffCircle(w.norm()));
    }
    let r = gas_roots(a, w);
    if (r.r2.norm() - r.r1.norm()).abs() > 1e-8 {
        return Ok(f_closed(a, e, ep, w));
    }
    let mut nodes = MIN_NODES;
    let mut prev = f_integral(a, e, ep, w, nodes);
    while nodes < MAX_NODES {
        nodes *= 2;
        let next = f_integral(a, e, ep, w, nodes);
        let change = (next - prev).norm() / next.norm().max(1e-300);
        if change <= 1e-12 {
            return Ok(next);
        }
        prev = next;
    }
    Err(GasError::NonConvergence { what: "f contour integral".into(), change: f64::NAN, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_one() {
        let f = f_eval(0.5, 0, 0, Complex64::new(1.0, 0.0)).unwrap();
        assert!((f.re - 0.1055728090000842).abs() < 1e-14);
        assert!(f.im.abs() < 1e-15);
        assert!(f_eval(1.0, 0, 0, Complex64::new(1.0, 0.0)).is_err());
        assert!(f_eval(0.5, 0, 0, Complex64::new(1.1, 0.0)).is_err());
    }

    #[test]
    fn closed_form_matches_contour_off_circle() {
        for &(a, w) in &[(0.5, Complex64::new(1.5, 0.3)), (0.3, Complex64::from_polar(0.8, 2.0)), (0.7, Complex64::from_polar(1.2, -1.0))] {
            for e in 0..2 {
                for ep in 0..2 {
                    let c = f_closed(a, e, ep, w);
                    let i = f_integral(a, e, ep, w, 512);
                    assert!((c - i).norm() < 1e-13, "a={a} w={w} ({e},{ep}): {c} vs {i}");
                }
            }
        }
    }
}
