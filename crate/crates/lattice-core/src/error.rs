use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("diamond size must be positive, got {0}")]
    BadSize(i64),
    #[error("weight a must be positive and finite, got {0}")]
    BadWeight(f64),
    #[error("asymptotic constants need 0 < a < 1, got a = {0}")]
    NotGasPhase(f64),
    #[error("size n = {0} is not a multiple of 4")]
    NotMultipleOfFour(usize),
    #[error("({b1}, {b2}) and ({w1}, {w2}) are not joined by an edge")]
    NotAnEdge { b1: i64, b2: i64, w1: i64, w2: i64 },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("record format: {0}")]
    Format(String),
}
