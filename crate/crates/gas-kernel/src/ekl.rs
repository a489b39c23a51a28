use std::collections::HashMap;
use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::{check_a, ctilde, GasError, MAX_NODES, MIN_NODES};

const BLOCK: u64 = 32;
const REL_TOL: f64 = 1e-10;
const ENV_TOL: f64 = 1e-15;

/// Coefficient of `u1^k` in `1 / c~(u1, u2)` on `|u1| = 1`:
/// `rho^|k| / sqrt(D)` with `D = alpha^2 - 4 beta^2`, `alpha = 2(1 + a^2)`,
/// `beta = a(u2 + 1/u2)` and `rho = -2 beta / (alpha + sqrt D)`.
pub fn inner_coefficient(a: f64, k: u64, u2: Complex64) -> Complex64 {
    let alpha = 2.0 * (1.0 + a * a);
    let beta = a * (u2 + u2.inv());
    let sd = (alpha * alpha - 4.0 * beta * beta).sqrt();
    let rho = -2.0 * beta / (alpha + sd);
    rho.powi(k as i32) / sd
}

/// Log-size of the integrand at the real point `u2 = r`, plus the `r^-l` factor.
fn saddle_objective(a: f64, k: u64, l: u64, r: f64) -> f64 {
    let alpha = 2.0 * (1.0 + a * a);
    let beta = a * (r + 1.0 / r);
    let d = alpha * alpha - 4.0 * beta * beta;
    let rho = 2.0 * beta / (alpha + d.sqrt());
    k as f64 * rho.ln() - 0.5 * d.ln() - l as f64 * r.ln()
}

/// Radius of the `u2` circle that minimises the integrand at its peak.
fn saddle_radius(a: f64, k: u64, l: u64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    // singularity where beta = alpha / 2, i.e. r + 1/r = (1 + a^2) / a
    let s = (1.0 + a * a) / a;
    let r_max = (s + (s * s - 4.0).sqrt()) / 2.0;
    let (mut lo, mut hi) = (1.0, 1.0 + (r_max - 1.0) * (1.0 - 1e-9));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let m1 = hi - phi * (hi - lo);
        let m2 = lo + phi * (hi - lo);
        if saddle_objective(a, k, l, m1) < saddle_objective(a, k, l, m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

/// Canonical representative under `E_{k,l} = E_{|k|,|l|} = E_{l,k}`, larger
/// index first.
fn canonical(k: i64, l: i64) -> (u64, u64) {
    let (k, l) = (k.unsigned_abs(), l.unsigned_abs());
    (k.max(l), k.min(l))
}

fn trapezoid(a: f64, k: u64, l: u64, r: f64, nodes: usize) -> (Complex64, f64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut env = 0.0f64;
    for j in 0..nodes {
        let u2 = Complex64::from_polar(r, TAU * j as f64 / nodes as f64);
        let term = inner_coefficient(a, k, u2) * u2.powi(-(l as i32));
        env = env.max(term.norm());
        sum += term;
    }
    (sum / nodes as f64, env)
}

/// A single `E_{k,l}` by the inner analytic reduction and a trapezoid sum in
/// `u2` on the saddle circle.
pub fn ekl_entry(a: f64, k: i64, l: i64) -> Result<f64, GasError> {
    check_a(a)?;
    let (k, l) = canonical(k, l);
    if (k + l) % 2 == 1 {
        return Ok(0.0);
    }
    let r = saddle_radius(a, k, l);
    let mut nodes = MIN_NODES;
    let (mut prev, _) = trapezoid(a, k, l, r, nodes);
    let mut change = f64::INFINITY;
    while nodes < MAX_NODES {
        nodes *= 2;
        let (next, env) = trapezoid(a, k, l, r, nodes);
        let diff = (next - prev).norm();
        change = diff / next.norm().max(1e-300);
        prev = next;
        if diff <= REL_TOL * next.norm() + ENV_TOL * env {
            return Ok(prev.re);
        }
    }
    Err(GasError::NonConvergence { what: format!("E_{{{k},{l}}}"), change, nodes })
}

/// A rectangular window of `E_{k,l}` values.
#[derive(Clone, Debug, PartialEq)]
pub struct EklTable {
    pub a: f64,
    pub k_range: RangeInclusive<i64>,
    pub l_range: RangeInclusive<i64>,
    pub values: Vec<f64>,
    /// Largest imaginary part discarded from the transforms.
    pub max_imag: f64,
}

impl EklTable {
    pub fn get(&self, k: i64, l: i64) -> Option<f64> {
        if !self.k_range.contains(&k) || !self.l_range.contains(&l) {
            return None;
        }
        let width = (self.l_range.end() - self.l_range.start() + 1) as usize;
        Some(self.values[(k - self.k_range.start()) as usize * width + (l - self.l_range.start()) as usize])
    }
}

/// All requested `E_{k,l}`. After the inner reduction each row `|k|` is a
/// single function of `u2`, and one transform of it gives a whole block of
/// `l` at once; blocks of 32 share a saddle radius. Grids double until every
/// entry changes by at most `1e-10` relative to itself (or `1e-15` of the
/// integrand envelope for entries that vanish by symmetry).
pub fn ekl_window(a: f64, k_range: RangeInclusive<i64>, l_range: RangeInclusive<i64>) -> Result<EklTable, GasError> {
    check_a(a)?;
    let mut needed: HashMap<u64, Vec<u64>> = HashMap::new();
    for k in k_range.clone() {
        for l in l_range.clone() {
            let (kk, ll) = canonical(k, l);
            needed.entry(kk).or_default().push(ll);
        }
    }
    let mut planner = FftPlanner::new();
    let mut solved: HashMap<(u64, u64), f64> = HashMap::new();
    let mut max_imag = 0.0f64;
    for (k, mut ls) in needed {
        ls.sort_unstable();
        ls.dedup();
        let mut start = 0;
        while start < ls.len() {
            let block_lo = ls[start];
            let end = ls.iter().position(|&l| l >= block_lo + BLOCK).unwrap_or(ls.len());
            let block = &ls[start..end];
            let mid = (block[0] + block[block.len() - 1]) / 2;
            let r = saddle_radius(a, k, mid);
            let l_top = block[block.len() - 1] as usize;
            let mut nodes = MIN_NODES.max((2 * l_top + 2).next_power_of_two());
            let mut prev = row_transform(a, k, r, nodes, &mut planner);
            let mut ok = false;
            while nodes < MAX_NODES {
                nodes *= 2;
                let next = row_transform(a, k, r, nodes, &mut planner);
                ok = block.iter().all(|&l| {
                    let (x, y) = (next.coef(l), prev.coef(l));
                    (x - y).norm() <= REL_TOL * x.norm() + ENV_TOL * next.env * r.powi(-(l as i32))
                });
                prev = next;
                if ok {
                    break;
                }
            }
            if !ok {
                return Err(GasError::NonConvergence { what: format!("E window row {k}"), change: f64::NAN, nodes });
            }
            for &l in block {
                let v = if (k + l) % 2 == 1 { Complex64::new(0.0, 0.0) } else { prev.coef(l) };
                max_imag = max_imag.max(v.im.abs());
                solved.insert((k, l), v.re);
            }
            start = end;
        }
    }
    let values = k_range
        .clone()
        .flat_map(|k| l_range.clone().map(move |l| (k, l)))
        .map(|(k, l)| solved[&canonical(k, l)])
        .collect();
    Ok(EklTable { a, k_range, l_range, values, max_imag })
}

struct Row {
    coefs: Vec<Complex64>,
    r: f64,
    env: f64,
}

impl Row {
    fn coef(&self, l: u64) -> Complex64 {
        self.coefs[l as usize] * self.r.powi(-(l as i32))
    }
}

fn row_transform(a: f64, k: u64, r: f64, nodes: usize, planner: &mut FftPlanner<f64>) -> Row {
    let mut buf: Vec<Complex64> = (0..nodes)
        .map(|j| inner_coefficient(a, k, Complex64::from_polar(r, TAU * j as f64 / nodes as f64)))
        .collect();
    let env = buf.iter().map(|z| z.norm()).fold(0.0, f64::max);
    planner.plan_fft_forward(nodes).process(&mut buf);
    buf.iter_mut().for_each(|v| *v /= nodes as f64);
    Row { coefs: buf, r, env }
}

/// Lazily filled `E_{k,l}` values keyed by the symmetry class.
#[derive(Clone, Debug)]
pub struct EklCache {
    a: f64,
    map: HashMap<(u64, u64), f64>,
}

impl EklCache {
    pub fn new(a: f64) -> Result<Self, GasError> {
        check_a(a)?;
        Ok(EklCache { a, map: HashMap::new() })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&mut self, k: i64, l: i64) -> Result<f64, GasError> {
        let key = canonical(k, l);
        if let Some(&v) = self.map.get(&key) {
            return Ok(v);
        }
        let v = ekl_entry(self.a, key.0 as i64, key.1 as i64)?;
        self.map.insert(key, v);
        Ok(v)
    }

    /// Read-only lookup for values already present.
    pub fn peek(&self, k: i64, l: i64) -> Option<f64> {
        self.map.get(&canonical(k, l)).copied()
    }

    pub fn absorb(&mut self, table: &EklTable) {
        for k in table.k_range.clone() {
            for l in table.l_range.clone() {
                self.map.insert(canonical(k, l), table.get(k, l).unwrap());
            }
        }
    }

    /// Fill every canonical pair in `pairs` not yet present.
    pub fn fill<I: IntoIterator<Item = (i64, i64)>>(&mut self, pairs: I) -> Result<(), GasError> {
        for (k, l) in pairs {
            self.get(k, l)?;
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u64, u64), f64)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }

    pub fn insert_raw(&mut self, k: u64, l: u64, v: f64) {
        self.map.insert(canonical(k as i64, l as i64), v);
    }
}

/// Leading-order asymptotics of `E_{B+A, B-A}`.
pub fn ekl_asymptotic(a: f64, big_a: i64, big_b: i64) -> f64 {
    let c = a / (1.0 + a * a);
    let curly_c = (1.0 - (1.0 - 2.0 * c).sqrt()) / (2.0 * c).sqrt();
    let (b, am) = if big_b.abs() >= big_a.abs() { (big_b.abs(), big_a) } else { (big_a.abs(), big_b) };
    let (bf, af) = (b as f64, am as f64);
    let sign = if (am + b).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let s = (1.0 - 2.0 * c).sqrt();
    sign * curly_c.powf(2.0 * bf) * (-(s / (2.0 * c)) * af * af / bf).exp()
        / (2.0 * (1.0 + a * a) * s.sqrt() * (TAU * c * bf).sqrt())
}

/// Plain `n x n` trapezoid sum over the unit torus; an oracle for small
/// indices.
pub fn ekl_torus_bruteforce(a: f64, k: i64, l: i64, n: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for j1 in 0..n {
        let u1 = Complex64::from_polar(1.0, TAU * j1 as f64 / n as f64);
        for j2 in 0..n {
            let u2 = Complex64::from_polar(1.0, TAU * j2 as f64 / n as f64);
            sum += 1.0 / (ctilde(a, u1, u2) * u1.powi(k as i32) * u2.powi(l as i32));
        }
    }
    sum / (n * n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_value() {
        let e = ekl_entry(0.5, 0, 0).unwrap();
        assert!((e - 0.5080996800485291).abs() < 1e-14, "{e}");
    }

    #[test]
    fn window_matches_entries() {
        let t = ekl_window(0.5, -3..=70, -5..=40).unwrap();
        for &(k, l) in &[(0, 0), (1, 1), (-3, 5), (70, 40), (64, 2), (33, 33), (10, -5)] {
            let w = t.get(k, l).unwrap();
            let e = ekl_entry(0.5, k, l).unwrap();
            assert!((w - e).abs() <= 1e-9 * e.abs() + 1e-300, "({k},{l}): {w} vs {e}");
        }
        assert!(t.max_imag < 1e-12);
    }

    #[test]
    fn saddle_sits_inside_the_analytic_annulus() {
        let r = saddle_radius(0.5, 0, 200);
        assert!(r > 1.0 && r < 2.0);
        assert_eq!(saddle_radius(0.5, 100, 0), 1.0);
    }
}
