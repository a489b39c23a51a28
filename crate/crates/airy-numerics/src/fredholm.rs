use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::airy::airy_or_zero;
use crate::quad::composite;
use crate::{airy_kernel, kernel_phi, AiryError, LineGrid, TestFunction};

const LAMBDA_ORDER: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NystromOptions {
    /// Gauss-Legendre order per segment at the first level.
    pub order: usize,
    /// Longest segment an interval is cut into.
    pub segment: f64,
    pub tol: f64,
    pub max_order: usize,
}

impl Default for NystromOptions {
    fn default() -> Self {
        NystromOptions { order: 64, segment: 8.0, tol: 1e-7, max_order: 512 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplaceResult {
    pub value: Complex64,
    /// Change against the previous level (and against a widened window when
    /// an interval was clipped).
    pub change: f64,
    pub nodes: usize,
    pub order: usize,
}

struct Node {
    line: usize,
    zeta: f64,
    weight: f64,
    factor: Complex64,
}

/// Pieces `(line, lo, hi, e^w - 1)` to be discretised.
type Piece = (usize, f64, f64, Complex64);

fn discretise(pieces: &[Piece], order: usize, segment: f64) -> Vec<Node> {
    pieces
        .iter()
        .flat_map(|&(line, lo, hi, factor)| {
            composite(order, lo, hi, segment).into_iter().map(move |(zeta, weight)| Node { line, zeta, weight, factor })
        })
        .collect()
}

/// `lambda` grid long enough that `Ai(z + l)^2 e^{l g}` is below `1e-20` for
/// every node, where `g` is the largest forward line gap.
fn lambda_grid(zeta_min: f64, gap: f64) -> Result<Vec<(f64, f64)>, AiryError> {
    let mut end = 0.0f64;
    loop {
        let z = zeta_min + end;
        if z >= 8.0f64.max(gap * gap) {
            let (ai, _) = airy_or_zero(z);
            if ai * ai * (end * gap).exp() <= 1e-20 {
                break;
            }
        }
        if z > crate::AIRY_RANGE {
            return Err(AiryError::NonConvergence { what: "lambda truncation".into(), change: f64::NAN, nodes: 0 });
        }
        end += 1.0;
    }
    Ok(composite(LAMBDA_ORDER, 0.0, end.max(1.0), 1.0))
}

fn kernel_matrix(nodes: &[Node], betas: &[f64]) -> Result<DMatrix<f64>, AiryError> {
    let n = nodes.len();
    let zeta_min = nodes.iter().map(|x| x.zeta).fold(f64::INFINITY, f64::min);
    let gap = betas.last().unwrap() - betas[0];
    let multi = betas.len() > 1 && nodes.iter().any(|x| x.line != nodes[0].line);
    let lam = if multi { lambda_grid(zeta_min, gap)? } else { Vec::new() };
    // Ai(zeta_i + lambda_j), only needed across different lines
    let table: Vec<Vec<f64>> = if multi {
        nodes.par_iter().map(|x| lam.iter().map(|&(l, _)| airy_or_zero(x.zeta + l).0).collect()).collect()
    } else {
        Vec::new()
    };
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = &nodes[i];
            (0..n)
                .map(|k| {
                    let xk = &nodes[k];
                    let (ti, tk) = (betas[xi.line], betas[xk.line]);
                    let at = if xi.line == xk.line {
                        airy_kernel(xi.zeta, xk.zeta).expect("nodes inside the Airy range")
                    } else {
                        let dt = ti - tk;
                        lam.iter().zip(table[i].iter().zip(&table[k])).map(|(&(l, w), (a, b))| w * (-l * dt).exp() * a * b).sum()
                    };
                    at - kernel_phi(ti, xi.zeta, tk, xk.zeta)
                })
                .collect()
        })
        .collect();
    Ok(DMatrix::from_fn(n, n, |i, k| rows[i][k]))
}

fn determinant(nodes: &[Node], betas: &[f64]) -> Result<Complex64, AiryError> {
    if nodes.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let k = kernel_matrix(nodes, betas)?;
    let n = nodes.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id + nodes[i].factor * nodes[i].weight.sqrt() * k[(i, j)] * nodes[j].weight.sqrt()
    });
    Ok(m.determinant())
}

fn converge(pieces: &[Piece], widened: Option<&[Piece]>, betas: &[f64], opts: NystromOptions, what: &str) -> Result<LaplaceResult, AiryError> {
    let mut order = opts.order;
    let mut prev = determinant(&discretise(pieces, order, opts.segment), betas)?;
    let mut change = f64::INFINITY;
    while order < opts.max_order {
        order *= 2;
        let nodes = discretise(pieces, order, opts.segment);
        let next = determinant(&nodes, betas)?;
        change = (next - prev).norm();
        prev = next;
        if change <= opts.tol {
            let mut result = LaplaceResult { value: next, change, nodes: nodes.len(), order };
            if let Some(wide) = widened {
                let alt = determinant(&discretise(wide, order, opts.segment), betas)?;
                result.change = result.change.max((alt - next).norm());
                if result.change > opts.tol {
                    return Err(AiryError::NonConvergence { what: format!("{what} window"), change: result.change, nodes: nodes.len() });
                }
            }
            return Ok(result);
        }
    }
    Err(AiryError::NonConvergence { what: what.into(), change, nodes: order })
}

fn pieces(grid: &LineGrid, psi: &TestFunction, extra: f64) -> Result<(Vec<Piece>, bool), AiryError> {
    let mut out = Vec::new();
    let mut clipped = false;
    for (p, &(lo, hi)) in psi.intervals.iter().enumerate() {
        if lo < grid.zeta_min || (hi.is_finite() && hi > grid.zeta_max) {
            return Err(AiryError::Grid(format!("interval [{lo}, {hi}] outside the window [{}, {}]", grid.zeta_min, grid.zeta_max)));
        }
        let top = if hi.is_finite() {
            hi
        } else {
            clipped = true;
            (grid.zeta_max + extra).min(crate::AIRY_RANGE)
        };
        for q in 0..grid.lines() {
            let w = psi.weights[p][q];
            if w != Complex64::new(0.0, 0.0) {
                out.push((q, lo, top, w.exp() - 1.0));
            }
        }
    }
    Ok((out, clipped))
}

/// `E exp(sum w_{p,q} mu(beta_q x A_p)) = det(I + (e^Psi - 1) A)` on the
/// lines, with `(e^Psi - 1)` applied on the left and square-root weights on
/// both sides. Only the support of `Psi` carries nodes.
pub fn laplace_functional_airy(grid: &LineGrid, psi: &TestFunction, opts: NystromOptions) -> Result<LaplaceResult, AiryError> {
    if psi.lines() != grid.lines() {
        return Err(AiryError::TestFunction(format!("{} weight columns for {} lines", psi.lines(), grid.lines())));
    }
    let (base, clipped) = pieces(grid, psi, 0.0)?;
    let wide = if clipped { Some(pieces(grid, psi, 4.0)?.0) } else { None };
    converge(&base, wide.as_deref(), &grid.betas, opts, "Airy Laplace functional")
}

/// `det(I - K_Ai)` on `[s, zeta_max]`, the one-point gap probability.
pub fn gap_probability(s: f64, zeta_max: f64, opts: NystromOptions) -> Result<LaplaceResult, AiryError> {
    if s >= zeta_max {
        return Ok(LaplaceResult { value: Complex64::new(1.0, 0.0), change: 0.0, nodes: 0, order: opts.order });
    }
    let piece = [(0, s, zeta_max, Complex64::new(-1.0, 0.0))];
    converge(&piece, None, &[0.0], opts, "gap probability")
}
