use crate::{Diamond, LatticeError, Vertex, E1, E2};

/// Position of the matched white vertex relative to its black partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    PlusE1 = 0,
    MinusE1 = 1,
    PlusE2 = 2,
    MinusE2 = 3,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::PlusE1, Dir::MinusE1, Dir::PlusE2, Dir::MinusE2];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Dir::PlusE1 => E1,
            Dir::MinusE1 => (-E1.0, -E1.1),
            Dir::PlusE2 => E2,
            Dir::MinusE2 => (-E2.0, -E2.1),
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(c: u8) -> Option<Dir> {
        Dir::ALL.get(c as usize).copied()
    }

    pub fn between(b: Vertex, w: Vertex) -> Option<Dir> {
        let d = (w.x1 - b.x1, w.x2 - b.x2);
        Dir::ALL.into_iter().find(|x| x.delta() == d)
    }
}

/// A perfect matching stored as one direction per black vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimerConfig {
    pub n: usize,
    pub dirs: Vec<Dir>,
}

impl DimerConfig {
    pub fn new(n: usize, dirs: Vec<Dir>) -> Self {
        DimerConfig { n, dirs }
    }

    /// Builds a configuration from explicit `(black, white)` pairs.
    pub fn from_pairs(d: &Diamond, pairs: &[(Vertex, Vertex)]) -> Result<Self, LatticeError> {
        let mut dirs = vec![None; d.size()];
        for &(b, w) in pairs {
            let bi = d
                .black_index(b)
                .ok_or_else(|| LatticeError::InvalidMatching(format!("{b:?} is not a black vertex")))?;
            let dir = Dir::between(b, w).ok_or(LatticeError::NotAnEdge { b1: b.x1, b2: b.x2, w1: w.x1, w2: w.x2 })?;
            if dirs[bi].replace(dir).is_some() {
                return Err(LatticeError::InvalidMatching(format!("{b:?} matched twice")));
            }
        }
        let dirs = dirs
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| LatticeError::InvalidMatching(format!("{:?} unmatched", d.black(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        let c = DimerConfig { n: d.n(), dirs };
        c.validate(d)?;
        Ok(c)
    }

    pub fn partner(&self, d: &Diamond, bi: usize) -> Vertex {
        d.black(bi).offset(self.dirs[bi].delta())
    }

    /// Whether the edge from black `b` in direction `dir` is covered.
    pub fn covers(&self, d: &Diamond, b: Vertex, dir: Dir) -> bool {
        d.black_index(b).is_some_and(|bi| self.dirs[bi] == dir)
    }

    /// White index matched to each black index.
    pub fn white_partners(&self, d: &Diamond) -> Vec<usize> {
        (0..d.size()).map(|bi| d.white_index(self.partner(d, bi)).unwrap()).collect()
    }

    /// Checks that every black vertex is matched inside the diamond and every
    /// white vertex is hit exactly once.
    pub fn validate(&self, d: &Diamond) -> Result<(), LatticeError> {
        if self.n != d.n() || self.dirs.len() != d.size() {
            return Err(LatticeError::InvalidMatching(format!(
                "configuration of size {} with {} entries does not fit a diamond of size {}",
                self.n,
                self.dirs.len(),
                d.n()
            )));
        }
        let mut hit = vec![false; d.size()];
        for bi in 0..d.size() {
            let w = self.partner(d, bi);
            let wi = d
                .white_index(w)
                .ok_or_else(|| LatticeError::InvalidMatching(format!("{:?} matched outside the diamond", d.black(bi))))?;
            if std::mem::replace(&mut hit[wi], true) {
                return Err(LatticeError::InvalidMatching(format!("{w:?} covered twice")));
            }
        }
        Ok(())
    }

    /// Product of edge weights.
    pub fn weight(&self, d: &Diamond) -> f64 {
        (0..d.size()).map(|bi| d.edge_weight(d.black(bi), self.dirs[bi])).product()
    }
}

/// Dimer class in `0..8`: direction code times two plus the parity of the
/// black vertex.
pub fn classify_dimer(black: Vertex, white: Vertex) -> Result<u8, LatticeError> {
    if black.color() != Some(crate::Color::Black) {
        return Err(LatticeError::NotAnEdge { b1: black.x1, b2: black.x2, w1: white.x1, w2: white.x2 });
    }
    let d = Dir::between(black, white).ok_or(LatticeError::NotAnEdge {
        b1: black.x1,
        b2: black.x2,
        w1: white.x1,
        w2: white.x2,
    })?;
    Ok(2 * d.code() + black.parity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_are_stable_and_injective() {
        let b = Vertex::new(2, 1);
        let c = classify_dimer(b, Vertex::new(1, 0)).unwrap();
        assert_eq!(c, classify_dimer(b, Vertex::new(1, 0)).unwrap());
        // same direction, other parity
        let b2 = Vertex::new(4, 1);
        assert_ne!(c, classify_dimer(b2, Vertex::new(3, 0)).unwrap());
        assert!(classify_dimer(b, Vertex::new(3, 2)).is_ok());
        assert!(classify_dimer(b, Vertex::new(5, 2)).is_err());
        assert!(classify_dimer(Vertex::new(1, 0), Vertex::new(2, 1)).is_err());
    }

    #[test]
    fn pairs_round_trip() {
        let d = Diamond::new(1, 1.0).unwrap();
        let pairs = [(Vertex::new(0, 1), Vertex::new(1, 0)), (Vertex::new(2, 1), Vertex::new(1, 2))];
        let c = DimerConfig::from_pairs(&d, &pairs).unwrap();
        assert_eq!(c.dirs, vec![Dir::MinusE2, Dir::PlusE2]);
        let bad = [(Vertex::new(0, 1), Vertex::new(1, 0)), (Vertex::new(2, 1), Vertex::new(1, 0))];
        assert!(DimerConfig::from_pairs(&d, &bad).is_err());
    }
}
