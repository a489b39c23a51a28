use aztec_lattice::{Color, Diamond, Dir, Vertex};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{invert_refined, log_det, KastError};

/// Default largest `n` for dense determinants in oracle use.
pub const DENSE_CAP: usize = 12;

/// Dense complex matrix with vertex labels on both axes.
#[derive(Clone, Debug)]
pub struct KernelMatrix {
    pub rows: Vec<Vertex>,
    pub cols: Vec<Vertex>,
    pub data: DMatrix<Complex64>,
    n: usize,
}

impl KernelMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, v: Vertex) -> Option<usize> {
        let n = self.n;
        let d = Diamond::new(n, 1.0).ok()?;
        match v.color()? {
            Color::Black => d.black_index(v),
            Color::White => d.white_index(v),
        }
    }

    /// Entry addressed by vertices; rows and columns are both in
    /// `(x2, x1)`-lexicographic order of their color class.
    pub fn get(&self, r: Vertex, c: Vertex) -> Result<Complex64, KastError> {
        let i = self.index(r).filter(|&i| self.rows.get(i) == Some(&r)).ok_or(KastError::Unindexed(r.x1, r.x2))?;
        let j = self.index(c).filter(|&j| self.cols.get(j) == Some(&c)).ok_or(KastError::Unindexed(c.x1, c.x2))?;
        Ok(self.data[(i, j)])
    }
}

/// Kasteleyn entry for black `b` and white `w` with `b = 1`:
/// with `j` the parity of `b`, `+e1 -> a(1-j)+j`, `+e2 -> (aj+1-j) i`,
/// `-e1 -> aj+1-j`, `-e2 -> (a(1-j)+j) i`, zero for non-edges.
pub fn kasteleyn_entry(a: f64, b: Vertex, w: Vertex) -> Complex64 {
    // p = a(1-j) + j and q = aj + 1 - j, selected rather than computed so the
    // entries are exact
    let (p, q) = if b.parity() == 0 { (a, 1.0) } else { (1.0, a) };
    match Dir::between(b, w) {
        Some(Dir::PlusE1) => Complex64::new(p, 0.0),
        Some(Dir::PlusE2) => Complex64::new(0.0, q),
        Some(Dir::MinusE1) => Complex64::new(q, 0.0),
        Some(Dir::MinusE2) => Complex64::new(0.0, p),
        None => Complex64::new(0.0, 0.0),
    }
}

/// `K[black][white]`.
pub fn build_k(d: &Diamond) -> KernelMatrix {
    let s = d.size();
    let mut data = DMatrix::zeros(s, s);
    for bi in 0..s {
        let b = d.black(bi);
        for (_, w) in d.neighbors(b) {
            data[(bi, d.white_index(w).unwrap())] = kasteleyn_entry(d.a(), b, w);
        }
    }
    KernelMatrix { rows: d.blacks().collect(), cols: d.whites().collect(), data, n: d.n() }
}

/// `|det K|`, equal to the weighted number of dimer covers.
pub fn partition_function_abs(d: &Diamond, cap: usize) -> Result<f64, KastError> {
    if d.n() > cap {
        return Err(KastError::TooLarge { n: d.n(), cap, what: "dense determinant" });
    }
    Ok(log_det(&build_k(d).data).log_abs.exp())
}

/// `K^{-1}[white][black]` with residual `|K K^{-1} - I| <= 1e-10`.
pub fn invert_k(k: &KernelMatrix) -> Result<KernelMatrix, KastError> {
    let (inv, res) = invert_refined(&k.data)?;
    if res > 1e-10 {
        return Err(KastError::Residual(res));
    }
    Ok(KernelMatrix { rows: k.cols.clone(), cols: k.rows.clone(), data: inv, n: k.n })
}

/// Like [`invert_k`], but the residual bound is taken relative to the largest
/// entry of the inverse. Large diamonds have inverse entries growing
/// exponentially towards the frozen corners, which puts the absolute residual
/// out of reach of double precision.
pub fn invert_k_relative(k: &KernelMatrix, tol: f64) -> Result<(KernelMatrix, f64), KastError> {
    let (inv, res) = invert_refined(&k.data)?;
    let scale = inv.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1.0);
    if res / scale > tol {
        return Err(KastError::Residual(res));
    }
    Ok((KernelMatrix { rows: k.cols.clone(), cols: k.rows.clone(), data: inv, n: k.n }, res))
}

/// Probability that all edges `(black, white)` are covered:
/// `det[K(b_i, w_i) K^{-1}(w_j, b_i)]`.
pub fn edge_correlation(edges: &[(Vertex, Vertex)], k: &KernelMatrix, kinv: &KernelMatrix) -> Result<f64, KastError> {
    let s = edges.len();
    let mut l = DMatrix::zeros(s, s);
    for (i, &(bi, wi)) in edges.iter().enumerate() {
        let kij = k.get(bi, wi)?;
        for (j, &(_, wj)) in edges.iter().enumerate() {
            l[(i, j)] = kij * kinv.get(wj, bi)?;
        }
    }
    let p = log_det(&l).value();
    if p.im.abs() > 1e-10 {
        return Err(KastError::NotReal(p.im));
    }
    Ok(p.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_by_case() {
        let a = 0.3;
        let b0 = Vertex::new(0, 1);
        assert_eq!(b0.parity(), 0);
        assert_eq!(kasteleyn_entry(a, b0, Vertex::new(1, 2)), Complex64::new(a, 0.0));
        let b1 = Vertex::new(2, 1);
        assert_eq!(b1.parity(), 1);
        assert_eq!(kasteleyn_entry(a, b1, Vertex::new(3, 2)), Complex64::new(1.0, 0.0));
        assert_eq!(kasteleyn_entry(a, b1, Vertex::new(5, 2)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn entry_magnitude_is_edge_weight() {
        let d = Diamond::new(6, 0.3).unwrap();
        for b in d.blacks() {
            for (dir, w) in d.neighbors(b) {
                assert_eq!(kasteleyn_entry(d.a(), b, w).norm(), d.edge_weight(b, dir));
            }
        }
    }

    #[test]
    fn single_domino_uniform_order_one() {
        let d = Diamond::new(1, 1.0).unwrap();
        let k = build_k(&d);
        let kinv = invert_k(&k).unwrap();
        let p = edge_correlation(&[(Vertex::new(0, 1), Vertex::new(1, 0))], &k, &kinv).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert!((partition_function_abs(&d, DENSE_CAP).unwrap() - 2.0).abs() < 1e-12);
    }
}
