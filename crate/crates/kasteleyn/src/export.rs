//! Matrix and edge-probability export.
//!
//! A matrix is stored as raw little-endian `f64` pairs `(re, im)` in
//! row-major order, next to a JSON sidecar listing the row and column
//! vertices.

use std::fs;
use std::io::Write;
use std::path::Path;

use aztec_lattice::Vertex;
use serde_json::json;

use crate::{KastError, KernelMatrix};

/// Writes `<stem>.bin` and `<stem>.json`.
pub fn write_matrix(dir: &Path, stem: &str, m: &KernelMatrix) -> Result<(), KastError> {
    let mut bin = Vec::with_capacity(16 * m.data.len());
    for i in 0..m.data.nrows() {
        for j in 0..m.data.ncols() {
            let z = m.data[(i, j)];
            bin.extend_from_slice(&z.re.to_le_bytes());
            bin.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    fs::write(dir.join(format!("{stem}.bin")), bin)?;
    let pts = |v: &[Vertex]| v.iter().map(|p| [p.x1, p.x2]).collect::<Vec<_>>();
    let side = json!({
        "n": m.n(),
        "shape": [m.data.nrows(), m.data.ncols()],
        "layout": "row-major, little-endian f64 (re, im) pairs",
        "rows": pts(&m.rows),
        "cols": pts(&m.cols),
    });
    fs::write(dir.join(format!("{stem}.json")), serde_json::to_string_pretty(&side).unwrap())?;
    Ok(())
}

/// Reads back the binary payload of [`write_matrix`] as `(re, im)` pairs.
pub fn read_matrix_payload(path: &Path) -> Result<Vec<(f64, f64)>, KastError> {
    let raw = fs::read(path)?;
    Ok(raw
        .chunks_exact(16)
        .map(|c| (f64::from_le_bytes(c[..8].try_into().unwrap()), f64::from_le_bytes(c[8..].try_into().unwrap())))
        .collect())
}

/// CSV rows `b1,b2,w1,w2,probability` with 17 significant digits.
pub fn write_edge_csv<W: Write>(out: &mut W, rows: &[(Vertex, Vertex, f64)]) -> std::io::Result<()> {
    writeln!(out, "b1,b2,w1,w2,probability")?;
    for (b, w, p) in rows {
        writeln!(out, "{},{},{},{},{:.16e}", b.x1, b.x2, w.x1, w.x2, p)?;
    }
    Ok(())
}
