use std::fmt;

use crate::error::{Error, Result};

/// An element of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZnVector {
    coords: Vec<i64>,
}

impl ZnVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ZnVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        ZnVector {
            coords: vec![0; dim],
        }
    }

    /// The `i`-th unit vector (0-based), scaled by `sign`.
    pub fn unit(dim: usize, i: usize, sign: i64) -> Self {
        let mut coords = vec![0; dim];
        coords[i] = sign;
        ZnVector { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &ZnVector) -> ZnVector {
        ZnVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> ZnVector {
        ZnVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> ZnVector {
        ZnVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn parse(dim: usize, s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (x1,...,xn), got {s:?}")))?;
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dim {
            return Err(Error::Parse(format!(
                "expected {dim} coordinates, got {}",
                coords.len()
            )));
        }
        Ok(ZnVector { coords })
    }
}

impl fmt::Display for ZnVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
