//! Raster and vector pictures of a dimer configuration.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::{classify_dimer, Diamond, DimerConfig};

/// Colors for the eight dimer classes, indexed by [`classify_dimer`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette(pub [[u8; 3]; 8]);

impl Default for Palette {
    fn default() -> Self {
        Palette([
            [200, 30, 30],
            [240, 130, 40],
            [30, 60, 200],
            [70, 160, 230],
            [30, 150, 60],
            [150, 210, 90],
            [230, 200, 40],
            [120, 60, 150],
        ])
    }
}

/// Cells covered by the domino of black index `bi` on the `2n x 2n` pixel grid.
///
/// The domino dual to the edge `(b, w)` is the union of the two unit squares
/// centered at `b` and `w`, drawn in coordinates rotated by 45 degrees.
fn domino_cells(d: &Diamond, c: &DimerConfig, bi: usize) -> [(usize, usize); 2] {
    let n = d.n() as i64;
    let b = d.black(bi);
    let w = c.partner(d, bi);
    let cell = |x1: i64, x2: i64| {
        let u = (x1 + x2 - 1) / 2;
        let v = (x2 - x1 + 2 * n - 1) / 2;
        (u as usize, v as usize)
    };
    [cell(b.x1, b.x2), cell(w.x1, w.x2)]
}

/// Binary PPM (P6) with `scale` pixels per lattice square. Squares outside
/// the diamond are white.
pub fn write_ppm<W: Write>(out: &mut W, d: &Diamond, c: &DimerConfig, palette: &Palette, scale: usize) -> io::Result<()> {
    let side = 2 * d.n();
    let px = side * scale;
    let mut img = vec![255u8; px * px * 3];
    for bi in 0..d.size() {
        let b = d.black(bi);
        let class = classify_dimer(b, c.partner(d, bi)).expect("configuration holds edges");
        let rgb = palette.0[class as usize];
        for (u, v) in domino_cells(d, c, bi) {
            for dy in 0..scale {
                for dx in 0..scale {
                    let x = u * scale + dx;
                    let y = (side - 1 - v) * scale + dy;
                    let o = (y * px + x) * 3;
                    img[o..o + 3].copy_from_slice(&rgb);
                }
            }
        }
    }
    write!(out, "P6\n{px} {px}\n255\n")?;
    out.write_all(&img)
}

/// SVG with one rectangle per domino.
pub fn svg(d: &Diamond, c: &DimerConfig, palette: &Palette) -> String {
    let side = 2 * d.n();
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {side} {side}" shape-rendering="crispEdges">"#);
    for bi in 0..d.size() {
        let class = classify_dimer(d.black(bi), c.partner(d, bi)).expect("configuration holds edges");
        let [p, q] = domino_cells(d, c, bi);
        let (x, y) = (p.0.min(q.0), side - 1 - p.1.max(q.1));
        let (wd, ht) = (p.0.abs_diff(q.0) + 1, p.1.abs_diff(q.1) + 1);
        let [r, g, b] = palette.0[class as usize];
        let _ = writeln!(s, r#"<rect x="{x}" y="{y}" width="{wd}" height="{ht}" fill="rgb({r},{g},{b})"/>"#);
    }
    s.push_str("</svg>\n");
    s
}
