//! Dimension vectors of the equioriented type A quiver.

use std::fmt;

use crate::error::{Error, Result};

/// The tuple `(d_0, ..., d_N)` of vector-space dimensions at the quiver
/// vertices; for a linear network these are the layer widths.
///
/// Requires at least two entries (`N >= 1`, i.e. at least one arrow).
/// Entries may be zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector {
    entries: Vec<u64>,
}

impl DimensionVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidDimensionVector(format!(
                "need at least 2 entries, got {}",
                entries.len()
            )));
        }
        // Guarantee that dim Rep_d (and hence every orbit codimension,
        // which it bounds) fits in a u64.
        let mut dim: u64 = 0;
        for w in entries.windows(2) {
            let prod = w[0]
                .checked_mul(w[1])
                .and_then(|p| dim.checked_add(p))
                .ok_or_else(|| {
                    Error::InvalidDimensionVector("dim Rep_d overflows u64".into())
                })?;
            dim = prod;
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Number of arrows `N`; one less than the number of vertices.
    pub fn arrows(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_entry(&self) -> u64 {
        *self.entries.iter().min().expect("nonempty")
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// The weakly increasing rearrangement `d'`.
    pub fn sorted(&self) -> DimensionVector {
        let mut e = self.entries.clone();
        e.sort_unstable();
        DimensionVector { entries: e }
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] <= w[1])
    }

    /// dim Rep_d = sum of d_{i-1} * d_i over the arrows.
    pub fn rep_dim(&self) -> u64 {
        self.entries.windows(2).map(|w| w[0] * w[1]).sum()
    }

    /// Subtract `r` from every entry. Errors when `r > min(d)`.
    pub fn reduce(&self, r: u64) -> Result<DimensionVector> {
        if r > self.min_entry() {
            return Err(Error::RankOutOfRange {
                rank: r,
                min_dim: self.min_entry(),
            });
        }
        DimensionVector::new(self.entries.iter().map(|&x| x - r).collect())
    }

    /// Add `p` to every entry.
    pub fn shifted(&self, p: u64) -> Result<DimensionVector> {
        DimensionVector::new(self.entries.iter().map(|&x| x + p).collect())
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Convenience constructor used across the tests.
pub fn dim(entries: &[u64]) -> DimensionVector {
    DimensionVector::new(entries.to_vec()).expect("valid dimension vector")
}
