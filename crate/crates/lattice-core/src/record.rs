//! Compact binary record of a dimer configuration.
//!
//! Layout (little endian): magic `AZTC`, version `u16`, `n` as `u32`, `a` as
//! IEEE-754 `f64`, then one 2-bit direction code per black vertex in index
//! order, packed four to a byte starting from the low bits.

use std::io::{self, Read, Write};

use crate::{DimerConfig, Dir, LatticeError};

pub const MAGIC: &[u8; 4] = b"AZTC";
pub const VERSION: u16 = 1;

pub fn encode(c: &DimerConfig, a: f64) -> Vec<u8> {
    let mut out = Vec::with_capacity(18 + c.dirs.len().div_ceil(4));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(c.n as u32).to_le_bytes());
    out.extend_from_slice(&a.to_le_bytes());
    for chunk in c.dirs.chunks(4) {
        let mut byte = 0u8;
        for (k, d) in chunk.iter().enumerate() {
            byte |= d.code() << (2 * k);
        }
        out.push(byte);
    }
    out
}

pub fn write<W: Write>(out: &mut W, c: &DimerConfig, a: f64) -> io::Result<()> {
    out.write_all(&encode(c, a))
}

/// Reads one record, returning the configuration and the stored weight.
pub fn read<R: Read>(inp: &mut R) -> Result<(DimerConfig, f64), LatticeError> {
    let io = |e: io::Error| LatticeError::Format(e.to_string());
    let mut head = [0u8; 18];
    inp.read_exact(&mut head).map_err(io)?;
    if &head[..4] != MAGIC {
        return Err(LatticeError::Format("bad magic".into()));
    }
    let version = u16::from_le_bytes([head[4], head[5]]);
    if version != VERSION {
        return Err(LatticeError::Format(format!("unsupported version {version}")));
    }
    let n = u32::from_le_bytes(head[6..10].try_into().unwrap()) as usize;
    let a = f64::from_le_bytes(head[10..18].try_into().unwrap());
    let count = n * (n + 1);
    let mut body = vec![0u8; count.div_ceil(4)];
    inp.read_exact(&mut body).map_err(io)?;
    let dirs = (0..count).map(|i| Dir::from_code((body[i / 4] >> (2 * (i % 4))) & 3).unwrap()).collect();
    Ok((DimerConfig::new(n, dirs), a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dirs: Vec<Dir> = (0..30).map(|i| Dir::ALL[(i * 7 + 3) % 4]).collect();
        let c = DimerConfig::new(5, dirs);
        let bytes = encode(&c, 0.5);
        assert_eq!(&bytes[..4], b"AZTC");
        assert_eq!(bytes.len(), 18 + 8);
        let (back, a) = read(&mut bytes.as_slice()).unwrap();
        assert_eq!(back, c);
        assert_eq!(a, 0.5);
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(read(&mut bad.as_slice()).is_err());
    }
}
