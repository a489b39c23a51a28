use std::collections::VecDeque;

use crate::{Color, Diamond, DimerConfig, Dir, LatticeError, Vertex};

/// Heights on all faces of the diamond, stored on the `(2n+1)^2` grid of
/// integer points (entries with odd coordinate sum are unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightField {
    pub n: usize,
    values: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    Bfs,
    Dfs,
}

const STEPS: [(i64, i64); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

/// Deterministic height of a boundary face.
pub fn boundary_height(n: usize, i: i64, j: i64) -> Option<i64> {
    let m = 2 * n as i64;
    if j == 0 {
        Some(i)
    } else if i == 0 {
        Some(j)
    } else if j == m {
        Some(m - i)
    } else if i == m {
        Some(m - j)
    } else {
        None
    }
}

/// Height increment when crossing from face `f` to face `f + d`.
///
/// The crossed edge has its left endpoint at `f + ((d1 - d2)/2, (d1 + d2)/2)`.
/// A black left endpoint gives `+3` if the edge is covered and `-1` otherwise;
/// a white one gives `-3` or `+1`.
pub fn increment(d: &Diamond, config: &DimerConfig, f: (i64, i64), step: (i64, i64)) -> i64 {
    let (d1, d2) = step;
    let left = Vertex::new(f.0 + (d1 - d2) / 2, f.1 + (d1 + d2) / 2);
    let right = Vertex::new(f.0 + (d1 + d2) / 2, f.1 + (d2 - d1) / 2);
    let (b, w, left_black) = match left.color() {
        Some(Color::Black) => (left, right, true),
        _ => (right, left, false),
    };
    let dir = Dir::between(b, w).expect("adjacent faces share an edge");
    let covered = config.covers(d, b, dir);
    match (left_black, covered) {
        (true, true) => 3,
        (true, false) => -1,
        (false, true) => -3,
        (false, false) => 1,
    }
}

impl HeightField {
    pub fn new(d: &Diamond, config: &DimerConfig) -> Result<Self, LatticeError> {
        Self::with_traversal(d, config, Traversal::Bfs)
    }

    /// Integrates increments over a spanning tree of faces rooted at `(0, 0)`.
    pub fn with_traversal(d: &Diamond, config: &DimerConfig, order: Traversal) -> Result<Self, LatticeError> {
        config.validate(d)?;
        let n = d.n();
        let m = 2 * n as i64;
        let side = (m + 1) as usize;
        let mut values = vec![i64::MIN; side * side];
        let at = |i: i64, j: i64| (j as usize) * side + i as usize;
        values[0] = 0;
        let mut frontier = VecDeque::from([(0i64, 0i64)]);
        while let Some(f) = match order {
            Traversal::Bfs => frontier.pop_front(),
            Traversal::Dfs => frontier.pop_back(),
        } {
            for s in STEPS {
                let g = (f.0 + s.0, f.1 + s.1);
                if !(0..=m).contains(&g.0) || !(0..=m).contains(&g.1) || values[at(g.0, g.1)] != i64::MIN {
                    continue;
                }
                values[at(g.0, g.1)] = values[at(f.0, f.1)] + increment(d, config, f, s);
                frontier.push_back(g);
            }
        }
        Ok(HeightField { n, values })
    }

    pub fn get(&self, i: i64, j: i64) -> Option<i64> {
        let m = 2 * self.n as i64;
        if !(0..=m).contains(&i) || !(0..=m).contains(&j) || (i + j).rem_euclid(2) != 0 {
            return None;
        }
        Some(self.values[(j * (m + 1) + i) as usize])
    }

    /// Largest loop sum over the four faces around every interior vertex.
    pub fn max_curl(&self, d: &Diamond, config: &DimerConfig) -> i64 {
        let mut worst = 0;
        for v in d.blacks().chain(d.whites()) {
            let faces = [(v.x1 + 1, v.x2), (v.x1, v.x2 + 1), (v.x1 - 1, v.x2), (v.x1, v.x2 - 1)];
            if faces.iter().any(|&(i, j)| self.get(i, j).is_none()) {
                continue;
            }
            let mut sum = 0;
            for k in 0..4 {
                let f = faces[k];
                let g = faces[(k + 1) % 4];
                sum += increment(d, config, f, (g.0 - f.0, g.1 - f.1));
            }
            worst = worst.max(sum.abs());
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_tiling(d: &Diamond) -> DimerConfig {
        fn go(d: &Diamond, bi: usize, used: &mut Vec<bool>, dirs: &mut Vec<Dir>) -> bool {
            if bi == d.size() {
                return true;
            }
            for (dir, w) in d.neighbors(d.black(bi)) {
                let wi = d.white_index(w).unwrap();
                if !used[wi] {
                    used[wi] = true;
                    dirs.push(dir);
                    if go(d, bi + 1, used, dirs) {
                        return true;
                    }
                    dirs.pop();
                    used[wi] = false;
                }
            }
            false
        }
        let mut dirs = Vec::new();
        assert!(go(d, 0, &mut vec![false; d.size()], &mut dirs));
        DimerConfig::new(d.n(), dirs)
    }

    #[test]
    fn boundary_profile_and_origin() {
        let d = Diamond::new(4, 0.5).unwrap();
        let c = first_tiling(&d);
        let h = HeightField::new(&d, &c).unwrap();
        assert_eq!(h.get(0, 0), Some(0));
        for f in d.faces() {
            if let Some(b) = boundary_height(4, f.i, f.j) {
                assert_eq!(h.get(f.i, f.j), Some(b), "face {f:?}");
            }
        }
        assert_eq!(h.max_curl(&d, &c), 0);
        assert_eq!(h, HeightField::with_traversal(&d, &c, Traversal::Dfs).unwrap());
    }
}
