//! Kostant partitions and rank patterns: the two equivalent combinatorial
//! codes for orbits of tuples of composable matrices under base change.
//!
//! A Kostant partition records the multiplicity `m_ij` of each indecomposable
//! interval summand `[i,j]`; the column-sum constraint `sum_{i<=k<=j} m_ij =
//! d_k` makes it a partition of the dimension vector. A rank pattern records
//! the ranks `r_ij` of the partial products. The two determine each other by
//! inclusion-exclusion.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;

use crate::dim::DimensionVector;
use crate::error::{Error, Result};

/// Index into a flattened upper-triangular array with rows/columns `0..=n`.
#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j <= n);
    // row k holds n+1-k entries, so row i starts at i(n+1) - i(i-1)/2
    i * (n + 1) - (i * i - i) / 2 + (j - i)
}

fn tri_len(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

// ---------------------------------------------------------------------------
// Kostant partitions
// ---------------------------------------------------------------------------

/// Multiplicities `m_ij >= 0` for `0 <= i <= j <= N`, stored row-major.
///
/// The dimension vector is derived: `d_k = sum_{i<=k<=j} m_ij`, so every
/// value of this type satisfies the column-sum constraint of its own `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KostantPartition {
    n: usize,
    entries: Vec<u64>,
}

impl KostantPartition {
    /// Build from `(i, j, multiplicity)` triples; unspecified entries are 0.
    pub fn from_triples(n: usize, triples: &[(usize, usize, u64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimensionVector(
                "a Kostant partition needs at least one arrow".into(),
            ));
        }
        let mut entries = vec![0u64; tri_len(n)];
        for &(i, j, v) in triples {
            if i > j || j > n {
                return Err(Error::InvalidDimensionVector(format!(
                    "interval ({i},{j}) out of range for N={n}"
                )));
            }
            entries[tri_index(n, i, j)] = v;
        }
        Ok(Self { n, entries })
    }

    pub(crate) fn from_raw(n: usize, entries: Vec<u64>) -> Self {
        debug_assert_eq!(entries.len(), tri_len(n));
        Self { n, entries }
    }

    /// Number of arrows `N`.
    pub fn arrows(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[tri_index(self.n, i, j)]
    }

    /// Row-major flattened entries; their lexicographic order is the
    /// canonical enumeration order.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Multiplicity `m_0N` of the full interval, which equals the rank
    /// `r_0N` of the total product on the corresponding orbit.
    pub fn top_multiplicity(&self) -> u64 {
        self.get(0, self.n)
    }

    /// The dimension vector this is a partition of: column sums.
    pub fn dimension_vector(&self) -> DimensionVector {
        let n = self.n;
        let mut d = vec![0u64; n + 1];
        for i in 0..=n {
            for j in i..=n {
                let v = self.get(i, j);
                if v != 0 {
                    for dk in d.iter_mut().take(j + 1).skip(i) {
                        *dk += v;
                    }
                }
            }
        }
        DimensionVector::new(d).expect("column sums of a valid partition")
    }

    /// Codimension of the orbit: the bilinear form
    /// `sum m_{(i-1)(j-1)} m_{uv}` over `1 <= i <= u <= j <= v <= N`,
    /// i.e. one Ext dimension per pair of overlapping-but-nested-neither
    /// interval summands.
    pub fn orbit_codim(&self) -> u64 {
        let n = self.n;
        // nonzero entries only; partitions are sparse in practice
        let nz: Vec<(usize, usize, u64)> = (0..=n)
            .flat_map(|i| (i..=n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = self.get(i, j);
                (v != 0).then_some((i, j, v))
            })
            .collect();
        let mut total: u64 = 0;
        for &(a, b, x) in &nz {
            // first factor is m_{(i-1)(j-1)} with i = a+1, j = b+1
            if b + 1 > n {
                continue;
            }
            for &(u, v, y) in &nz {
                // condition i <= u <= j <= v reads a+1 <= u <= b+1 <= v
                if a + 1 <= u && u <= b + 1 && b + 1 <= v {
                    total = total
                        .checked_add(x.checked_mul(y).expect("codim term overflow"))
                        .expect("codim overflow");
                }
            }
        }
        total
    }

    /// Add `p` longest intervals (`m_0N += p`). The orbit codimension is
    /// unchanged because the full-interval module is both injective and
    /// projective.
    pub fn longest_root_shift(&self, p: i64) -> Result<KostantPartition> {
        let top = self.top_multiplicity();
        let new_top = if p >= 0 {
            top.checked_add(p as u64)
                .ok_or(Error::NegativeShift { top, shift: p })?
        } else {
            top.checked_sub(p.unsigned_abs())
                .ok_or(Error::NegativeShift { top, shift: p })?
        };
        let mut entries = self.entries.clone();
        entries[tri_index(self.n, 0, self.n)] = new_top;
        Ok(KostantPartition { n: self.n, entries })
    }

    /// The rank pattern `r_ij = sum_{k<=i, j<=l} m_kl` (ranks of partial
    /// products; diagonal recovers `d`).
    pub fn to_rank_pattern(&self) -> RankPattern {
        let n = self.n;
        let mut entries = vec![0u64; tri_len(n)];
        for i in 0..=n {
            for j in i..=n {
                let mut r = 0u64;
                for k in 0..=i {
                    for l in j..=n {
                        r += self.get(k, l);
                    }
                }
                entries[tri_index(n, i, j)] = r;
            }
        }
        RankPattern { n, entries }
    }
}

impl fmt::Display for KostantPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triangular(f, self.n, &|i, j| self.get(i, j))
    }
}

/// Render an upper-triangular array with rows indented to the diagonal.
fn fmt_triangular(
    f: &mut fmt::Formatter<'_>,
    n: usize,
    get: &dyn Fn(usize, usize) -> u64,
) -> fmt::Result {
    for i in 0..=n {
        if i > 0 {
            writeln!(f)?;
        }
        write!(f, "{:width$}", "", width = 3 * i)?;
        for j in i..=n {
            if j > i {
                write!(f, " ")?;
            }
            write!(f, "{:>2}", get(i, j))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Rank patterns
// ---------------------------------------------------------------------------

/// Ranks `r_ij >= 0` for `0 <= i <= j <= N` with `r_ii = d_i`, stored
/// row-major. Off-diagonal `r_ij` is the rank of the product
/// `A_j ... A_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankPattern {
    n: usize,
    entries: Vec<u64>,
}

impl RankPattern {
    pub fn from_triples(n: usize, triples: &[(usize, usize, u64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimensionVector(
                "a rank pattern needs at least one arrow".into(),
            ));
        }
        let mut entries = vec![0u64; tri_len(n)];
        for &(i, j, v) in triples {
            if i > j || j > n {
                return Err(Error::InvalidDimensionVector(format!(
                    "index ({i},{j}) out of range for N={n}"
                )));
            }
            entries[tri_index(n, i, j)] = v;
        }
        Ok(Self { n, entries })
    }

    pub fn arrows(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[tri_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[tri_index(self.n, i, j)] = v;
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// The diagonal `(r_00, ..., r_NN)`, i.e. the dimension vector.
    pub fn dimension_vector(&self) -> DimensionVector {
        DimensionVector::new((0..=self.n).map(|i| self.get(i, i)).collect())
            .expect("diagonal of a rank pattern")
    }

    /// Rank of the full product, `r_0N`.
    pub fn top_rank(&self) -> u64 {
        self.get(0, self.n)
    }

    /// Entry-wise partial order: `self <= other` in the closure order.
    pub fn dominated_by(&self, other: &RankPattern) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.entries
            .iter()
            .zip(other.entries.iter())
            .all(|(a, b)| a <= b)
    }

    /// Inclusion-exclusion differences
    /// `m_ij = r_ij - r_{i,j+1} - r_{i-1,j} + r_{i-1,j+1}`
    /// (with `r_ij = 0` outside the triangle). Entries may be negative;
    /// they are all nonnegative exactly when the pattern comes from an
    /// orbit.
    pub fn to_kostant_differences(&self) -> SignedKostant {
        let n = self.n;
        let at = |i: isize, j: isize| -> i64 {
            if i < 0 || j > n as isize || i > j {
                0
            } else {
                self.get(i as usize, j as usize) as i64
            }
        };
        let mut entries = vec![0i64; tri_len(n)];
        for i in 0..=n {
            for j in i..=n {
                let (si, sj) = (i as isize, j as isize);
                entries[tri_index(n, i, j)] =
                    at(si, sj) - at(si, sj + 1) - at(si - 1, sj) + at(si - 1, sj + 1);
            }
        }
        SignedKostant { n, entries }
    }

    /// Whether this pattern is realized by an orbit, i.e. all
    /// inclusion-exclusion differences are nonnegative.
    pub fn is_orbit_pattern(&self) -> bool {
        self.to_kostant_differences().is_nonnegative()
    }
}

impl fmt::Display for RankPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triangular(f, self.n, &|i, j| self.get(i, j))
    }
}

/// Inclusion-exclusion differences of a rank pattern; the integer-valued
/// counterpart of a Kostant partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedKostant {
    n: usize,
    entries: Vec<i64>,
}

impl SignedKostant {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[tri_index(self.n, i, j)]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0)
    }

    /// Reinterpret as a Kostant partition; `None` if any entry is negative.
    pub fn into_kostant(self) -> Option<KostantPartition> {
        if !self.is_nonnegative() {
            return None;
        }
        Some(KostantPartition {
            n: self.n,
            entries: self.entries.into_iter().map(|v| v as u64).collect(),
        })
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Enumeration driver shared by the full listing, the visitor, and the
/// counting routine. Entries are assigned row by row; within row `i` the
/// entries `m_{i,N}, ..., m_{i,i+1}` are free (capped by the remaining
/// column sums) and the diagonal `m_ii` is forced by column `i`.
struct Enumerator<'a, F: FnMut(&KostantPartition)> {
    n: usize,
    rem: Vec<u64>,
    entries: Vec<u64>,
    top: Option<u64>,
    cap: u64,
    visited: u64,
    f: &'a mut F,
}

impl<F: FnMut(&KostantPartition)> Enumerator<'_, F> {
    fn run(&mut self) -> Result<u64> {
        self.row(0)?;
        Ok(self.visited)
    }

    fn row(&mut self, i: usize) -> Result<()> {
        if i > self.n {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::ResourceCap {
                    what: "Kostant partition enumeration".into(),
                    limit: self.cap,
                });
            }
            let part = KostantPartition::from_raw(self.n, self.entries.clone());
            (self.f)(&part);
            return Ok(());
        }
        self.cell(i, self.n)
    }

    fn cell(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.n;
        if j == i {
            // diagonal entry forced by the remaining column-i sum
            let v = self.rem[i];
            self.entries[tri_index(n, i, i)] = v;
            self.rem[i] = 0;
            self.row(i + 1)?;
            self.rem[i] = v;
            self.entries[tri_index(n, i, i)] = 0;
            return Ok(());
        }
        let cap_v = (i..=j).map(|k| self.rem[k]).min().expect("nonempty span");
        let (lo, hi) = match self.top {
            // m_0N is pinned when enumerating a fixed top rank
            Some(t) if i == 0 && j == n => {
                if t > cap_v {
                    return Ok(());
                }
                (t, t)
            }
            _ => (0, cap_v),
        };
        for v in lo..=hi {
            self.entries[tri_index(n, i, j)] = v;
            for k in i..=j {
                self.rem[k] -= v;
            }
            self.cell(i, j - 1)?;
            for k in i..=j {
                self.rem[k] += v;
            }
        }
        self.entries[tri_index(n, i, j)] = 0;
        Ok(())
    }
}

/// Visit every Kostant partition of `d` (optionally only those with a fixed
/// top multiplicity `m_0N`). No order guarantee; returns the number visited.
pub fn visit_kostant_partitions<F: FnMut(&KostantPartition)>(
    d: &DimensionVector,
    top: Option<u64>,
    cap: u64,
    f: &mut F,
) -> Result<u64> {
    let n = d.arrows();
    Enumerator {
        n,
        rem: d.entries().to_vec(),
        entries: vec![0u64; tri_len(n)],
        top,
        cap,
        visited: 0,
        f,
    }
    .run()
}

/// Every element of `M^+_d`, exactly once, sorted lexicographically on the
/// row-major entries (the canonical order).
pub fn enumerate_kostant_partitions(
    d: &DimensionVector,
    cap: u64,
) -> Result<Vec<KostantPartition>> {
    let mut out = Vec::new();
    visit_kostant_partitions(d, None, cap, &mut |m| out.push(m.clone()))?;
    out.sort_unstable();
    Ok(out)
}

/// Count `|M^+_d|` (or the subset with fixed `m_0N`) without enumerating,
/// by memoizing on the remaining column sums. Used to decide whether a
/// brute-force scan is feasible.
pub fn count_kostant_partitions(d: &DimensionVector, top: Option<u64>) -> BigUint {
    let n = d.arrows();
    // cells in the same (row, j-descending) order as the enumerator
    let mut cells: Vec<(usize, usize)> = Vec::with_capacity(tri_len(n));
    for i in 0..=n {
        for j in (i..=n).rev() {
            cells.push((i, j));
        }
    }
    type Memo = HashMap<(usize, Vec<u64>), BigUint>;
    fn rec(
        cells: &[(usize, usize)],
        idx: usize,
        rem: &mut Vec<u64>,
        top: Option<u64>,
        n: usize,
        memo: &mut Memo,
    ) -> BigUint {
        if idx == cells.len() {
            return BigUint::one();
        }
        let key = (idx, rem.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let (i, j) = cells[idx];
        let mut total = BigUint::zero();
        if i == j {
            // forced diagonal
            let v = rem[i];
            rem[i] = 0;
            total += rec(cells, idx + 1, rem, top, n, memo);
            rem[i] = v;
        } else {
            let cap_v = (i..=j).map(|k| rem[k]).min().expect("span");
            let (lo, hi) = match top {
                Some(t) if i == 0 && j == n => {
                    if t > cap_v {
                        memo.insert(key, BigUint::zero());
                        return BigUint::zero();
                    }
                    (t, t)
                }
                _ => (0, cap_v),
            };
            for v in lo..=hi {
                for k in i..=j {
                    rem[k] -= v;
                }
                total += rec(cells, idx + 1, rem, top, n, memo);
                for k in i..=j {
                    rem[k] += v;
                }
            }
        }
        memo.insert(key, total.clone());
        total
    }
    let mut rem = d.entries().to_vec();
    rec(&cells, 0, &mut rem, top, n, &mut HashMap::new())
}
