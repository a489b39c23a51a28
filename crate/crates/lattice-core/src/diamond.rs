use crate::{Color, Dir, LatticeError, ModelParams, Vertex};

/// Kind of a face. Interior faces with both coordinates even touch two
/// a-weighted and two unit-weighted edges, so they carry neither label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceKind {
    A,
    B,
    Mixed,
    Boundary,
}

/// A face given by its center coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub i: i64,
    pub j: i64,
    pub kind: FaceKind,
}

/// The order-`n` Aztec diamond graph together with its weights.
///
/// Vertices of each color are indexed lexicographically by `(x2, x1)`.
#[derive(Clone, Debug)]
pub struct Diamond {
    pub params: ModelParams,
}

impl Diamond {
    pub fn new(n: usize, a: f64) -> Result<Self, LatticeError> {
        Ok(Diamond { params: ModelParams::new(n, a)? })
    }

    pub fn from_params(params: ModelParams) -> Self {
        Diamond { params }
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn a(&self) -> f64 {
        self.params.a
    }

    /// Number of vertices of each color, `n(n + 1)`.
    pub fn size(&self) -> usize {
        self.n() * (self.n() + 1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        let m = 2 * self.n() as i64;
        match v.color() {
            Some(Color::White) => (1..m).contains(&v.x1) && (0..=m).contains(&v.x2),
            Some(Color::Black) => (0..=m).contains(&v.x1) && (1..m).contains(&v.x2),
            None => false,
        }
    }

    pub fn black(&self, idx: usize) -> Vertex {
        let w = self.n() + 1;
        Vertex::new(2 * (idx % w) as i64, 2 * (idx / w) as i64 + 1)
    }

    pub fn white(&self, idx: usize) -> Vertex {
        let w = self.n();
        Vertex::new(2 * (idx % w) as i64 + 1, 2 * (idx / w) as i64)
    }

    pub fn black_index(&self, v: Vertex) -> Option<usize> {
        if v.color() != Some(Color::Black) || !self.contains(v) {
            return None;
        }
        Some(((v.x2 - 1) / 2) as usize * (self.n() + 1) + (v.x1 / 2) as usize)
    }

    pub fn white_index(&self, v: Vertex) -> Option<usize> {
        if v.color() != Some(Color::White) || !self.contains(v) {
            return None;
        }
        Some((v.x2 / 2) as usize * self.n() + ((v.x1 - 1) / 2) as usize)
    }

    pub fn blacks(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.size()).map(|i| self.black(i))
    }

    pub fn whites(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.size()).map(|i| self.white(i))
    }

    /// White neighbor of `b` in direction `d`, if it lies in the diamond.
    pub fn white_of(&self, b: Vertex, d: Dir) -> Option<Vertex> {
        let w = b.offset(d.delta());
        self.contains(w).then_some(w)
    }

    /// All `(direction, white)` neighbors of a black vertex.
    pub fn neighbors(&self, b: Vertex) -> impl Iterator<Item = (Dir, Vertex)> + '_ {
        Dir::ALL.into_iter().filter_map(move |d| self.white_of(b, d).map(|w| (d, w)))
    }

    /// Every edge as `(black index, direction, white index)`.
    pub fn edges(&self) -> Vec<(usize, Dir, usize)> {
        let mut out = Vec::with_capacity(4 * self.size());
        for bi in 0..self.size() {
            let b = self.black(bi);
            for (d, w) in self.neighbors(b) {
                out.push((bi, d, self.white_index(w).unwrap()));
            }
        }
        out
    }

    /// Whether the edge from `b` in direction `d` borders an a-face.
    ///
    /// Each edge borders exactly one face with odd coordinates, namely the
    /// corner `b + (d1, 0)` of the unit square spanned by the edge.
    pub fn is_a_edge(b: Vertex, d: Dir) -> bool {
        let (d1, _) = d.delta();
        (b.x1 + d1 + b.x2).rem_euclid(4) == 2
    }

    pub fn edge_weight(&self, b: Vertex, d: Dir) -> f64 {
        if Self::is_a_edge(b, d) {
            self.a()
        } else {
            1.0
        }
    }

    pub fn face_kind(&self, i: i64, j: i64) -> FaceKind {
        let m = 2 * self.n() as i64;
        debug_assert!((i + j).rem_euclid(2) == 0);
        if i == 0 || j == 0 || i == m || j == m {
            FaceKind::Boundary
        } else if i.rem_euclid(2) == 0 {
            FaceKind::Mixed
        } else if (i + j).rem_euclid(4) == 2 {
            FaceKind::A
        } else {
            FaceKind::B
        }
    }

    /// All faces in row-major order of `(j, i)`.
    pub fn faces(&self) -> Vec<Face> {
        let m = 2 * self.n() as i64;
        let mut out = Vec::new();
        for j in 0..=m {
            for i in (j.rem_euclid(2)..=m).step_by(2) {
                out.push(Face { i, j, kind: self.face_kind(i, j) });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trips() {
        let d = Diamond::new(5, 0.5).unwrap();
        for i in 0..d.size() {
            assert_eq!(d.black_index(d.black(i)), Some(i));
            assert_eq!(d.white_index(d.white(i)), Some(i));
        }
        let mut b: Vec<_> = d.blacks().collect();
        b.sort_by_key(|v| (v.x2, v.x1));
        assert_eq!(b, d.blacks().collect::<Vec<_>>());
        assert_eq!(d.black_index(Vertex::new(1, 0)), None);
        assert_eq!(d.white_index(Vertex::new(1, 11)), None);
    }

    #[test]
    fn vertex_counts_and_parities() {
        let d = Diamond::new(4, 0.5).unwrap();
        let w0 = d.whites().filter(|w| w.parity() == 0).count();
        let w1 = d.whites().filter(|w| w.parity() == 1).count();
        assert_eq!(w0 + w1, d.size());
        assert_eq!(d.edges().len(), 4 * d.n() * d.n());
    }

    #[test]
    fn edge_weights_follow_face_kind() {
        let d = Diamond::new(4, 0.3).unwrap();
        for b in d.blacks() {
            for (dir, _) in d.neighbors(b) {
                let (d1, _) = dir.delta();
                let kind = d.face_kind(b.x1 + d1, b.x2);
                assert_eq!(kind == FaceKind::A, Diamond::is_a_edge(b, dir));
            }
        }
    }

    #[test]
    fn face_kinds() {
        let d = Diamond::new(4, 0.5).unwrap();
        assert_eq!(d.face_kind(1, 1), FaceKind::A);
        assert_eq!(d.face_kind(1, 3), FaceKind::B);
        assert_eq!(d.face_kind(2, 2), FaceKind::Mixed);
        assert_eq!(d.face_kind(0, 4), FaceKind::Boundary);
        assert_eq!(d.faces().len(), 41);
    }
}
