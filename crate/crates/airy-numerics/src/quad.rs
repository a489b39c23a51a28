use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

/// Gauss-Legendre nodes and weights mapped to `[lo, hi]`.
pub fn gauss_legendre(order: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(order).expect("order must be positive"));
    let (mid, half) = ((hi + lo) / 2.0, (hi - lo) / 2.0);
    rule.as_node_weight_pairs().iter().map(|&(x, w)| (mid + half * x, half * w)).collect()
}

/// Composite rule: `[lo, hi]` split into equal panels no longer than `panel`.
pub(crate) fn composite(order: usize, lo: f64, hi: f64, panel: f64) -> Vec<(f64, f64)> {
    if hi <= lo {
        return Vec::new();
    }
    let count = ((hi - lo) / panel).ceil().max(1.0) as usize;
    let width = (hi - lo) / count as f64;
    (0..count)
        .flat_map(|i| gauss_legendre(order, lo + i as f64 * width, lo + (i + 1) as f64 * width))
        .collect()
}
