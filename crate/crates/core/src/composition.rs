//! Compositions: the finite sequences of positive integers that index every
//! nested sum in this crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A composition `(k_1, ..., k_r)` of positive integers. The empty
/// composition is allowed and indexes the empty sum (value 1 by convention).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Build from explicit parts; every part must be >= 1.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("composition parts must be positive"));
        }
        Ok(Composition { parts })
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    /// `{1}_d`: the all-ones composition of depth `d` (`d = 0` gives the
    /// empty composition).
    pub fn ones(d: usize) -> Self {
        Composition { parts: vec![1; d] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Weight `|k| = k_1 + ... + k_r`.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Depth `r`.
    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Admissible iff `k_1 > 1`; the empty composition is not admissible.
    pub fn is_admissible(&self) -> bool {
        self.parts.first().is_some_and(|&k| k > 1)
    }

    /// Partial weight `|k|_j = k_1 + ... + k_j`, with `|k|_0 = 0`.
    pub fn partial_weight(&self, j: usize) -> Result<u32> {
        if j > self.depth() {
            return Err(Error::IndexRange {
                index: j,
                depth: self.depth(),
            });
        }
        Ok(self.parts[..j].iter().sum())
    }

    /// Leading prefix `(k_1, ..., k_j)`.
    pub fn prefix(&self, j: usize) -> Composition {
        Composition {
            parts: self.parts[..j.min(self.depth())].to_vec(),
        }
    }

    /// Reversed suffix `(k_r, ..., k_j)` for 1-based `j`; empty when
    /// `j > r`.
    pub fn reversed_suffix(&self, j: usize) -> Composition {
        if j > self.depth() {
            return Composition::empty();
        }
        let mut parts: Vec<u32> = self.parts[j - 1..].to_vec();
        parts.reverse();
        Composition { parts }
    }

    /// Concatenate blocks into one composition.
    pub fn concat(blocks: &[Composition]) -> Composition {
        let mut parts = Vec::new();
        for b in blocks {
            parts.extend_from_slice(&b.parts);
        }
        Composition { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `"2,1,3"`, `"(2,1,3)"`, `"()"`, and `""` (empty).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Composition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(format!("invalid composition part `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}
