use aztec_lattice::{Diamond, DimerConfig, Dir, Vertex};

use crate::KastError;

/// Largest size accepted by [`enumerate_tilings`] (1024 tilings).
pub const MAX_ENUMERATION_SIZE: usize = 4;

/// All perfect matchings of the order-`n` diamond, in lexicographic order of
/// direction codes.
pub fn enumerate_tilings(d: &Diamond) -> Result<Vec<DimerConfig>, KastError> {
    if d.n() > MAX_ENUMERATION_SIZE {
        return Err(KastError::TooLarge { n: d.n(), cap: MAX_ENUMERATION_SIZE, what: "exhaustive enumeration" });
    }
    let mut out = Vec::new();
    let mut used = vec![false; d.size()];
    let mut dirs = Vec::with_capacity(d.size());
    walk(d, &mut used, &mut dirs, &mut out);
    Ok(out)
}

fn walk(d: &Diamond, used: &mut [bool], dirs: &mut Vec<Dir>, out: &mut Vec<DimerConfig>) {
    let bi = dirs.len();
    if bi == d.size() {
        out.push(DimerConfig::new(d.n(), dirs.clone()));
        return;
    }
    for (dir, w) in d.neighbors(d.black(bi)) {
        let wi = d.white_index(w).unwrap();
        if used[wi] {
            continue;
        }
        used[wi] = true;
        dirs.push(dir);
        walk(d, used, dirs, out);
        dirs.pop();
        used[wi] = false;
    }
}

/// Weighted sum over all tilings.
pub fn brute_partition_function(d: &Diamond) -> Result<f64, KastError> {
    Ok(enumerate_tilings(d)?.iter().map(|c| c.weight(d)).sum())
}

/// Probability that every listed edge is covered, by enumeration.
pub fn brute_edge_probability(d: &Diamond, tilings: &[DimerConfig], edges: &[(Vertex, Vertex)]) -> f64 {
    let z: f64 = tilings.iter().map(|c| c.weight(d)).sum();
    let hit: f64 = tilings
        .iter()
        .filter(|c| edges.iter().all(|&(b, w)| Dir::between(b, w).is_some_and(|dir| c.covers(d, b, dir))))
        .map(|c| c.weight(d))
        .sum();
    hit / z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (n, want) in [(1, 2), (2, 8), (3, 64), (4, 1024)] {
            let d = Diamond::new(n, 1.0).unwrap();
            let t = enumerate_tilings(&d).unwrap();
            assert_eq!(t.len(), want);
            let mut s = t.clone();
            s.sort_by_key(|c| c.dirs.clone());
            s.dedup();
            assert_eq!(s.len(), want);
            for c in &t {
                c.validate(&d).unwrap();
            }
        }
        assert!(enumerate_tilings(&Diamond::new(5, 1.0).unwrap()).is_err());
    }
}
