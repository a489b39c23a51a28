//! Aztec diamond graph with two-periodic weights.
//!
//! Coordinates follow the rotated convention: white vertices sit at
//! `(odd, even)` points, black vertices at `(even, odd)` points, and faces at
//! integer points `(i, j)` with `i + j` even inside `[0, 2n]^2`. Two vertices
//! are joined by an edge when they differ by `±e1 = ±(1, 1)` or `±e2 = ±(-1, 1)`.

mod config;
mod diamond;
mod error;
pub mod height;
mod params;
pub mod render;
pub mod record;

pub use config::{classify_dimer, DimerConfig, Dir};
pub use diamond::{Diamond, Face, FaceKind};
pub use error::LatticeError;
pub use height::{boundary_height, HeightField};
pub use params::{AsymptoticConstants, ModelParams};

/// Vertex color in the bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

/// A lattice point of the diamond graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub x1: i64,
    pub x2: i64,
}

impl Vertex {
    pub const fn new(x1: i64, x2: i64) -> Self {
        Vertex { x1, x2 }
    }

    /// Color from coordinate parity alone; `None` for face points.
    pub fn color(self) -> Option<Color> {
        match (self.x1.rem_euclid(2), self.x2.rem_euclid(2)) {
            (1, 0) => Some(Color::White),
            (0, 1) => Some(Color::Black),
            _ => None,
        }
    }

    /// Parity class: 0 when `(x1 + x2) mod 4 = 1`, 1 when it equals 3.
    pub fn parity(self) -> u8 {
        parity_of(self.x1, self.x2)
    }

    pub fn offset(self, d: (i64, i64)) -> Vertex {
        Vertex::new(self.x1 + d.0, self.x2 + d.1)
    }
}

/// Parity class of an arbitrary vertex-like point.
pub fn parity_of(x1: i64, x2: i64) -> u8 {
    match (x1 + x2).rem_euclid(4) {
        1 => 0,
        3 => 1,
        r => panic!("point ({x1}, {x2}) is not a vertex (sum mod 4 = {r})"),
    }
}

/// `h(e1, e2) = e1(1 - e2) + e2(1 - e1)`.
pub fn h_parity(e1: u8, e2: u8) -> u8 {
    e1 ^ e2
}

pub const E1: (i64, i64) = (1, 1);
pub const E2: (i64, i64) = (-1, 1);
