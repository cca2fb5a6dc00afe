//! Outcomes of a d-variate Bernoulli vector, encoded as bitmasks.
//!
//! Coordinate `j` (0-based) of an outcome is bit `j` of its index, so
//! coordinate 0 is the least significant bit. The lattice operations `meet`
//! and `join` are bitwise AND and OR; `level` counts ones. Human-readable
//! outcome keys write coordinates left to right: `"110"` is the outcome with
//! coordinates (1, 1, 0), i.e. index 3.

use crate::error::{Error, Result};

pub const MAX_DIMENSION: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Outcome(usize);

impl Outcome {
    pub const fn from_index(index: usize) -> Self {
        Outcome(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }

    pub const fn level(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn bit(self, j: usize) -> bool {
        self.0 >> j & 1 == 1
    }

    pub const fn meet(self, other: Self) -> Self {
        Outcome(self.0 & other.0)
    }

    pub const fn join(self, other: Self) -> Self {
        Outcome(self.0 | other.0)
    }

    /// Componentwise partial order of the Boolean lattice.
    pub const fn le(self, other: Self) -> bool {
        self.0 & other.0 == self.0
    }

    pub const fn comparable(self, other: Self) -> bool {
        self.le(other) || other.le(self)
    }

    /// Complements every coordinate.
    pub const fn flip(self, d: usize) -> Self {
        Outcome(!self.0 & ((1 << d) - 1))
    }

    /// Projects onto the listed coordinates; coordinate `k` of the result is
    /// coordinate `keep[k]` of `self`.
    pub fn project(self, keep: &[usize]) -> Self {
        let mut out = 0;
        for (k, &j) in keep.iter().enumerate() {
            if self.bit(j) {
                out |= 1 << k;
            }
        }
        Outcome(out)
    }

    /// Number of ones among the coordinates selected by `mask`.
    pub const fn level_in(self, mask: usize) -> usize {
        (self.0 & mask).count_ones() as usize
    }

    pub fn key(self, d: usize) -> String {
        (0..d).map(|j| if self.bit(j) { '1' } else { '0' }).collect()
    }

    /// Parses a `d`-character key of `0`/`1` coordinates.
    pub fn from_key(key: &str, d: usize) -> Result<Self> {
        if key.len() != d {
            return Err(Error::InvalidOutcomeKey {
                key: key.to_string(),
                reason: format!("expected {d} characters, got {}", key.len()),
            });
        }
        let mut index = 0;
        for (j, c) in key.chars().enumerate() {
            match c {
                '1' => index |= 1 << j,
                '0' => {}
                other => {
                    return Err(Error::InvalidOutcomeKey {
                        key: key.to_string(),
                        reason: format!("invalid character {other:?}"),
                    })
                }
            }
        }
        Ok(Outcome(index))
    }

    pub fn all(d: usize) -> impl Iterator<Item = Outcome> {
        (0..1usize << d).map(Outcome)
    }

    /// All outcomes at the given level, in index order.
    pub fn with_level(d: usize, m: usize) -> impl Iterator<Item = Outcome> {
        Self::all(d).filter(move |o| o.level() == m)
    }
}

pub fn check_dimension(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if d > MAX_DIMENSION {
        return Err(Error::DimensionBound {
            d,
            bound: MAX_DIMENSION,
            operation: "outcome indexing",
        });
    }
    Ok(())
}
