use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::{check_a, ctilde, f_closed, gas_roots, GasError, MAX_NODES, MIN_NODES};

/// Inner and outer radii `1 ∓ rho/2` for deformed Fourier contours, where
/// `rho` is the distance from the unit circle to the nearest circle on which
/// the two roots meet in modulus.
pub fn decay_radii(a: f64) -> Result<(f64, f64), GasError> {
    check_a(a)?;
    let gap_on = |r: f64| {
        (0..1024)
            .map(|j| {
                let w = Complex64::from_polar(r, TAU * j as f64 / 1024.0);
                let g = gas_roots(a, w);
                g.r2.norm() - g.r1.norm()
            })
            .chain(std::iter::once({
                let g = gas_roots(a, Complex64::new(-r, 0.0));
                g.r2.norm() - g.r1.norm()
            }))
            .fold(f64::INFINITY, f64::min)
    };
    let scan = |outward: bool| {
        let mut lo = 0.0;
        let mut hi = 1.0;
        let at = |d: f64| if outward { 1.0 + d } else { 1.0 / (1.0 + d) };
        // bracket the first collision, then bisect
        let mut d = 1e-3;
        while d < 64.0 {
            if gap_on(at(d)) < 1e-9 {
                hi = d;
                break;
            }
            lo = d;
            d *= 1.25;
        }
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if gap_on(at(mid)) < 1e-9 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (at(lo) - 1.0).abs()
    };
    let rho = scan(true).min(scan(false));
    Ok((1.0 - rho / 2.0, 1.0 + rho / 2.0))
}

fn h_of(e: u8, ep: u8) -> u32 {
    (e ^ ep) as u32
}

/// Gas correlations `G_{e,e'}(t)` for all `|t| <= tmax`.
#[derive(Clone, Debug)]
pub struct GasWindow {
    pub e: u8,
    pub ep: u8,
    pub tmax: usize,
    pub values: Vec<Complex64>,
    pub nodes: usize,
}

impl GasWindow {
    pub fn get(&self, t: i64) -> Complex64 {
        self.values[(t + self.tmax as i64) as usize]
    }
}

fn coefficients(a: f64, e: u8, ep: u8, radius: f64, nodes: usize, planner: &mut FftPlanner<f64>) -> (Vec<Complex64>, f64) {
    let mut buf: Vec<Complex64> = (0..nodes)
        .map(|j| f_closed(a, e, ep, Complex64::from_polar(radius, TAU * j as f64 / nodes as f64)))
        .collect();
    let env = buf.iter().map(|z| z.norm()).fold(0.0, f64::max);
    planner.plan_fft_forward(nodes).process(&mut buf);
    buf.iter_mut().for_each(|v| *v /= nodes as f64);
    (buf, env)
}

/// Fourier coefficients of `f` on circles of radius `1 ± rho/2`, with the
/// outer circle used for `t > 0` and the inner one for `t < 0`. Node counts
/// double until every coefficient moves by at most `1e-10` relative, or by
/// at most `1e-14` of the integrand envelope once a coefficient has sunk to
/// the rounding floor of the transform.
pub fn gas_correlation_window(a: f64, e: u8, ep: u8, tmax: usize) -> Result<GasWindow, GasError> {
    check_a(a)?;
    let (r_in, r_out) = decay_radii(a)?;
    let prefactor = a * Complex64::i().powu(h_of(e, ep));
    let mut planner = FftPlanner::new();
    let eval = |nodes: usize, planner: &mut FftPlanner<f64>| {
        let (outer, env_out) = coefficients(a, e, ep, r_out, nodes, planner);
        let (inner, env_in) = coefficients(a, e, ep, r_in, nodes, planner);
        (-(tmax as i64)..=tmax as i64)
            .map(|t| {
                let (c, r, env) =
                    if t >= 0 { (outer[t as usize], r_out, env_out) } else { (inner[(nodes as i64 + t) as usize], r_in, env_in) };
                let scale = prefactor.norm() * r.powi(-t as i32);
                (prefactor * c * r.powi(-t as i32), scale * env)
            })
            .collect::<Vec<_>>()
    };
    let mut nodes = MIN_NODES.max((4 * tmax + 4).next_power_of_two());
    let mut prev = eval(nodes, &mut planner);
    let mut change = f64::INFINITY;
    while nodes < MAX_NODES {
        nodes *= 2;
        let next = eval(nodes, &mut planner);
        change = next.iter().zip(&prev).map(|(x, y)| (x.0 - y.0).norm() / x.0.norm().max(1e-300)).fold(0.0, f64::max);
        let ok = next.iter().zip(&prev).all(|(x, y)| (x.0 - y.0).norm() <= 1e-10 * x.0.norm() + 1e-14 * x.1);
        prev = next;
        if ok {
            let values = prev.into_iter().map(|v| v.0).collect();
            return Ok(GasWindow { e, ep, tmax, values, nodes });
        }
    }
    Err(GasError::NonConvergence { what: "gas correlation window".into(), change, nodes })
}

pub fn gas_correlation(a: f64, e: u8, ep: u8, t: i64) -> Result<Complex64, GasError> {
    let w = gas_correlation_window(a, e, ep, t.unsigned_abs() as usize)?;
    Ok(w.get(t))
}

/// Plain `n x n` trapezoid sum of the double contour integral on the unit
/// torus. Independent of the root factorisation; only accurate for small
/// `|t|`.
pub fn gas_correlation_bruteforce(a: f64, e: u8, ep: u8, t: i64, n: usize) -> Complex64 {
    let (ei, epi) = (e as i32, ep as i32);
    let h = h_of(e, ep) as i32;
    let mut sum = Complex64::new(0.0, 0.0);
    for j1 in 0..n {
        let u1 = Complex64::from_polar(1.0, TAU * j1 as f64 / n as f64);
        for j2 in 0..n {
            let u2 = Complex64::from_polar(1.0, TAU * j2 as f64 / n as f64);
            let num = a.powi(ei) * u1.powi(-1 + ei + epi) * u2.powi(1 - h) + a.powi(1 - ei) * u1.powi(ei + epi) * u2.powi(h);
            sum += num / (ctilde(a, u1, u2) * (u1 * u2).powi(t as i32 + ei));
        }
    }
    a * Complex64::i().powu(h as u32) * sum / (n * n) as f64
}
