//! Exact linear algebra over the rationals: fraction-free rank for dense
//! matrices of rationals, matrix tuples with composable shapes, and a
//! sparse integer row echelon used for graded kernel computations.
//!
//! Rank is discontinuous, so nothing here ever touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::dim::DimensionVector;
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Dense rational matrices
// ---------------------------------------------------------------------------

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| BigRational::from(BigInt::from(rows[i][j])))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} - {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        }))
    }

    /// Squared Frobenius norm, exact.
    pub fn frobenius_sq(&self) -> BigRational {
        self.data.iter().map(|x| x * x).sum()
    }

    /// Rank by fraction-free (Bareiss) elimination: rows are scaled to
    /// integers first, then the pivoting updates keep every intermediate
    /// entry an exact minor.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // clear denominators row by row (does not change the rank)
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = lcm.lcm(self.get(i, j).denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let x = self.get(i, j);
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0usize;
        let mut row = 0usize;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pivot) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, pivot);
            for r in (row + 1)..self.rows {
                for c in (col + 1)..self.cols {
                    let num = &a[r][c] * &a[row][col] - &a[r][col] * &a[row][c];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division is exact");
                    a[r][c] = num / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[row][col].clone();
            rank += 1;
            row += 1;
        }
        rank
    }
}

// ---------------------------------------------------------------------------
// Matrix tuples
// ---------------------------------------------------------------------------

/// A point of the representation space: matrices `A_1, ..., A_N` with
/// `A_i` of shape `d_i x d_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixTuple {
    d: DimensionVector,
    mats: Vec<RatMatrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<RatMatrix>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::ShapeMismatch("a tuple needs at least one matrix".into()));
        }
        let mut d = vec![mats[0].cols() as u64];
        for w in mats.windows(2) {
            if w[1].cols() != w[0].rows() {
                return Err(Error::ShapeMismatch(format!(
                    "cannot compose {}x{} after {}x{}",
                    w[1].rows(),
                    w[1].cols(),
                    w[0].rows(),
                    w[0].cols()
                )));
            }
        }
        d.extend(mats.iter().map(|m| m.rows() as u64));
        Ok(Self {
            d: DimensionVector::new(d)?,
            mats,
        })
    }

    pub fn zero(d: &DimensionVector) -> Self {
        let e = d.entries();
        let mats = (1..e.len())
            .map(|i| RatMatrix::zero(e[i] as usize, e[i - 1] as usize))
            .collect();
        Self { d: d.clone(), mats }
    }

    /// Identity maps at every arrow; requires a constant dimension vector.
    pub fn identity(d: &DimensionVector) -> Result<Self> {
        let e = d.entries();
        if e.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::ShapeMismatch(
                "identity tuple needs a constant dimension vector".into(),
            ));
        }
        let mats = (1..e.len()).map(|_| RatMatrix::identity(e[0] as usize)).collect();
        Ok(Self { d: d.clone(), mats })
    }

    pub fn dimension_vector(&self) -> &DimensionVector {
        &self.d
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.mats
    }

    /// Total product `A_N ... A_1`.
    pub fn product(&self) -> RatMatrix {
        let mut acc = self.mats[0].clone();
        for a in &self.mats[1..] {
            acc = a.mul(&acc).expect("shapes validated at construction");
        }
        acc
    }

    /// Ranks of all partial products: `r_ij = rank(A_j ... A_{i+1})` with
    /// `r_ii = d_i`, by exact elimination.
    pub fn rank_pattern(&self) -> crate::kostant::RankPattern {
        let n = self.d.arrows();
        let mut triples: Vec<(usize, usize, u64)> = Vec::new();
        for i in 0..=n {
            triples.push((i, i, self.d.entries()[i]));
            let mut prod: Option<RatMatrix> = None;
            for j in (i + 1)..=n {
                let next = match prod {
                    None => self.mats[j - 1].clone(),
                    Some(p) => self.mats[j - 1].mul(&p).expect("validated shapes"),
                };
                triples.push((i, j, next.rank() as u64));
                prod = Some(next);
            }
        }
        crate::kostant::RankPattern::from_triples(n, &triples).expect("indices in range")
    }
}

// ---------------------------------------------------------------------------
// Sparse integer echelon
// ---------------------------------------------------------------------------

/// A sparse row: strictly increasing column indices with nonzero integer
/// entries. Columns `>= ncols` hold bookkeeping (combination history) and
/// are never eligible as pivots.
pub type SparseRow = Vec<(u32, BigInt)>;

/// Online row echelon over the integers (fraction-free): rows are pushed
/// one at a time and reduced against the pivots seen so far. A row that
/// vanishes on the first `ncols` columns contributes to the kernel; its
/// history columns record an integer dependency among the pushed rows.
pub struct SparseEchelon {
    ncols: u32,
    with_history: bool,
    pivots: BTreeMap<u32, SparseRow>,
    pushed: u32,
    kernel: Vec<SparseRow>,
}

impl SparseEchelon {
    pub fn new(ncols: usize, with_history: bool) -> Self {
        Self {
            ncols: ncols as u32,
            with_history,
            pivots: BTreeMap::new(),
            pushed: 0,
            kernel: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pushed(&self) -> usize {
        self.pushed as usize
    }

    /// Kernel combinations found so far, one per vanished row: for each,
    /// the coefficients (indexed by push order) of an integer linear
    /// relation among the pushed rows, content-reduced.
    pub fn kernel_basis(&self) -> &[SparseRow] {
        &self.kernel
    }

    pub fn push_row(&mut self, mut row: SparseRow) {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0), "sorted columns");
        if self.with_history {
            row.push((self.ncols + self.pushed, BigInt::one()));
        }
        self.pushed += 1;
        loop {
            let Some(lead) = row.iter().find(|(c, _)| *c < self.ncols).map(|(c, _)| *c) else {
                break;
            };
            match self.pivots.get(&lead) {
                None => {
                    content_reduce(&mut row);
                    self.pivots.insert(lead, row);
                    return;
                }
                Some(pivot) => {
                    row = eliminate(&row, pivot, lead);
                }
            }
        }
        // vanished inside the real columns
        if self.with_history {
            content_reduce(&mut row);
            self.kernel.push(
                row.into_iter()
                    .map(|(c, v)| (c - self.ncols, v))
                    .collect(),
            );
        }
    }
}

/// `lead(pivot)/g * row - row[lead]/g * pivot`, which cancels column `lead`.
fn eliminate(row: &SparseRow, pivot: &SparseRow, lead: u32) -> SparseRow {
    let rv = &row.iter().find(|(c, _)| *c == lead).expect("lead in row").1;
    debug_assert_eq!(pivot[0].0, lead);
    let pl = &pivot[0].1;
    let g = rv.gcd(pl);
    let a = pl / &g; // multiplies row
    let b = rv / &g; // multiplies pivot
    let mut out: SparseRow = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < row.len() || j < pivot.len() {
        let next = match (row.get(i), pivot.get(j)) {
            (Some(&(rc, ref rx)), Some(&(pc, ref px))) => {
                if rc < pc {
                    i += 1;
                    (rc, rx * &a)
                } else if pc < rc {
                    j += 1;
                    (pc, -(px * &b))
                } else {
                    i += 1;
                    j += 1;
                    (rc, rx * &a - px * &b)
                }
            }
            (Some(&(rc, ref rx)), None) => {
                i += 1;
                (rc, rx * &a)
            }
            (None, Some(&(pc, ref px))) => {
                j += 1;
                (pc, -(px * &b))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

fn content_reduce(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
    // keep a deterministic sign: first entry positive
    if let Some((_, first)) = row.first() {
        if first.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
}
