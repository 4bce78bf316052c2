//! Binary state files: a 24-byte little-endian header
//! (`"KS2D"`, version, n, n, time) followed by `u¹` and `u²` as row-major
//! physical samples.

use std::fs;
use std::path::Path;

use crate::spectral::{Grid, VectorField};
use crate::{Error, Result};

pub const MAGIC: &[u8; 4] = b"KS2D";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 24;

/// Exact file size for an `n × n` state.
pub fn snapshot_len(n: usize) -> usize {
    HEADER_LEN + 2 * 8 * n * n
}

/// Physical-space contents of a snapshot.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub n: usize,
    pub u1: Vec<f64>,
    pub u2: Vec<f64>,
}

impl Snapshot {
    pub fn from_field(t: f64, u: &VectorField) -> Self {
        let (u1, u2) = u.to_physical();
        Snapshot {
            t,
            n: u.grid().n(),
            u1,
            u2,
        }
    }

    pub fn to_field(&self) -> Result<VectorField> {
        VectorField::from_physical(Grid::new(self.n)?, &self.u1, &self.u2)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.n as u32;
        let mut out = Vec::with_capacity(snapshot_len(self.n));
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&n.to_le_bytes());
        out.extend_from_slice(&n.to_le_bytes());
        out.extend_from_slice(&self.t.to_le_bytes());
        for v in self.u1.iter().chain(&self.u2) {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], path: &Path) -> Result<Self> {
        let bad = |message: String| Error::Snapshot {
            path: path.to_path_buf(),
            message,
        };
        if bytes.len() < HEADER_LEN {
            return Err(bad(format!("{} bytes is shorter than the header", bytes.len())));
        }
        if &bytes[..4] != MAGIC {
            return Err(bad("missing KS2D magic".into()));
        }
        let word = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap());
        let version = word(4);
        if version != VERSION {
            return Err(bad(format!("unsupported version {version}, expected {VERSION}")));
        }
        let (n1, n2) = (word(8) as usize, word(12) as usize);
        if n1 != n2 {
            return Err(bad(format!("non-square grid {n1} x {n2}")));
        }
        if bytes.len() != snapshot_len(n1) {
            return Err(bad(format!(
                "length {} does not match {} expected for n = {n1}",
                bytes.len(),
                snapshot_len(n1)
            )));
        }
        let t = f64::from_le_bytes(bytes[16..24].try_into().unwrap());
        let mut vals = bytes[HEADER_LEN..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()));
        let u1 = vals.by_ref().take(n1 * n1).collect();
        let u2 = vals.collect();
        Ok(Snapshot { t, n: n1, u1, u2 })
    }
}

pub fn write_snapshot(path: &Path, t: f64, u: &VectorField) -> Result<()> {
    fs::write(path, Snapshot::from_field(t, u).to_bytes())?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    Snapshot::from_bytes(&fs::read(path)?, path)
}
