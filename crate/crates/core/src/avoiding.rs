//! The graded-kernel verifier: the kernel of the substitution map that
//! merges the first `r+1` variables of every block into shared variables
//! `y_1..y_{r+1}` is a homogeneous ideal whose lowest-degree part has
//! degree `C` and rank `theta`. Computing graded kernel ranks by exact
//! elimination therefore recovers `(C, theta)` independently of the
//! enumeration, series, and closed-form routes.
//!
//! Everything is expressed in elementary symmetric generators: per block
//! the invariant ring is free on `e_1..e_{d_i}`, and the image of `e_k`
//! under the substitution is `sum_t E_t f_{k-t}` where `E_t` is elementary
//! symmetric in the shared variables and `f_s` in the block's remaining
//! ones. Both families are free again, so images expand exactly with no
//! reference to the underlying variables.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::dim::DimensionVector;
use crate::error::{Error, Result};
use crate::exact::SparseEchelon;

/// A monomial in a weighted free commutative monoid: exponents aligned
/// with a [`Layout`].
pub type Monomial = Vec<u32>;

/// A polynomial as a sparse sorted monomial-coefficient list.
pub type Polynomial = Vec<(Monomial, BigInt)>;

/// Generator weights of a free polynomial ring, grouped in blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    /// Weight (degree) of each generator.
    pub weights: Vec<u32>,
    /// Start offset of each block in `weights`.
    pub offsets: Vec<usize>,
}

impl Layout {
    fn total(&self) -> usize {
        self.weights.len()
    }
}

/// Generators of the invariant ring: per vertex `i`, the elementary
/// symmetric polynomials `e_1..e_{d_i}` of its block of variables.
pub fn source_layout(d: &DimensionVector) -> Layout {
    let mut weights = Vec::new();
    let mut offsets = Vec::new();
    for &di in d.entries() {
        offsets.push(weights.len());
        weights.extend(1..=di as u32);
    }
    Layout { weights, offsets }
}

/// Generators of the target ring: `E_1..E_{r+1}` for the shared variables,
/// then per vertex the elementary symmetric polynomials of its remaining
/// `d_i - (r+1)` variables.
pub fn target_layout(d: &DimensionVector, r: u64) -> Layout {
    let shared = (r + 1) as u32;
    let mut weights: Vec<u32> = (1..=shared).collect();
    let mut offsets = vec![0usize];
    for &di in d.entries() {
        offsets.push(weights.len());
        let rest = di.saturating_sub(r + 1) as u32;
        weights.extend(1..=rest);
    }
    Layout { weights, offsets }
}

/// All monomials of weighted degree `n`, in the canonical order (exponent
/// of the first generator varies slowest, ascending).
pub fn monomials_of_degree(layout: &Layout, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut acc = vec![0u32; layout.total()];
    fn rec(weights: &[u32], pos: usize, left: usize, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == weights.len() {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        if pos + 1 == weights.len() {
            // last generator: forced exponent if divisible
            let w = weights[pos] as usize;
            if left % w == 0 {
                acc[pos] = (left / w) as u32;
                out.push(acc.clone());
                acc[pos] = 0;
            }
            return;
        }
        let w = weights[pos] as usize;
        for a in 0..=(left / w) {
            acc[pos] = a as u32;
            rec(weights, pos + 1, left - a * w, acc, out);
        }
        acc[pos] = 0;
    }
    rec(&layout.weights, 0, n, &mut acc, &mut out);
    out
}

/// Number of monomials of weighted degree `n`, without enumerating
/// (saturating; used only against resource caps).
pub fn count_monomials(layout: &Layout, n: usize) -> u64 {
    let mut table = vec![0u128; n + 1];
    table[0] = 1;
    for &w in &layout.weights {
        let w = w as usize;
        for deg in w..=n {
            table[deg] = table[deg].saturating_add(table[deg - w]);
        }
    }
    u64::try_from(table[n]).unwrap_or(u64::MAX)
}

/// The canonical basis of the degree-`n` graded piece of the invariant
/// ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: usize,
    pub generators: Vec<Monomial>,
}

fn check_avoiding_rank(d: &DimensionVector, r: u64) -> Result<()> {
    if d.min_entry() == 0 || r >= d.min_entry() {
        // at r = min(d) the kernel no longer sees the locus (the locus is
        // everything), so the graded-kernel route only covers r < min(d)
        return Err(Error::RankOutOfRange {
            rank: r,
            min_dim: d.min_entry().saturating_sub(1),
        });
    }
    Ok(())
}

/// Degree-`n` source basis, capped.
pub fn graded_basis(d: &DimensionVector, n: usize, cap: u64) -> Result<GradedBasis> {
    let layout = source_layout(d);
    let count = count_monomials(&layout, n);
    if count > cap {
        return Err(Error::ResourceCap {
            what: format!("source basis of dimension {count} at degree {n}"),
            limit: cap,
        });
    }
    Ok(GradedBasis {
        degree: n,
        generators: monomials_of_degree(&layout, n),
    })
}

fn poly_mul(a: &BTreeMap<Monomial, BigInt>, b: &Polynomial) -> BTreeMap<Monomial, BigInt> {
    let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
            let e = out.entry(m).or_insert_with(BigInt::zero);
            *e += ca * cb;
            // keep zero entries out so supports stay tight
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Image of one source generator (`e_k` of block `i`) as a target
/// polynomial: `sum_t E_t * f^{(i)}_{k-t}` over the in-range `t`.
fn generator_image(d: &DimensionVector, r: u64, tgt: &Layout, block: usize, k: u32) -> Polynomial {
    let shared = (r + 1) as u32;
    let rest = d.entries()[block].saturating_sub(r + 1) as u32;
    let mut out = Polynomial::new();
    for t in 0..=k.min(shared) {
        let s = k - t;
        if s > rest {
            continue;
        }
        let mut mono = vec![0u32; tgt.total()];
        if t > 0 {
            mono[(t - 1) as usize] += 1; // E_t
        }
        if s > 0 {
            mono[tgt.offsets[block + 1] + (s - 1) as usize] += 1; // f_s of block
        }
        out.push((mono, BigInt::one()));
    }
    out.sort();
    out
}

/// Image of a source monomial: product of the generator images.
fn monomial_image(d: &DimensionVector, r: u64, tgt: &Layout, mono: &Monomial) -> Polynomial {
    let src = source_layout(d);
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    acc.insert(vec![0u32; tgt.total()], BigInt::one());
    for (g, &a) in mono.iter().enumerate() {
        if a == 0 {
            continue;
        }
        // locate the block and the index k within it
        let block = src
            .offsets
            .iter()
            .rposition(|&off| off <= g)
            .expect("offset exists");
        let k = (g - src.offsets[block]) as u32 + 1;
        let img = generator_image(d, r, tgt, block, k);
        for _ in 0..a {
            acc = poly_mul(&acc, &img);
        }
    }
    acc.into_iter().collect()
}

/// Apply the substitution map to a homogeneous element of degree `n`,
/// returning its coefficients in the canonical degree-`n` monomial basis
/// of the target ring.
pub fn apply_phi(
    d: &DimensionVector,
    r: u64,
    element: &Polynomial,
    n: usize,
    cap: u64,
) -> Result<Vec<BigInt>> {
    check_avoiding_rank(d, r)?;
    let src = source_layout(d);
    for (mono, _) in element {
        if mono.len() != src.total() {
            return Err(Error::LengthMismatch {
                expected: src.total(),
                got: mono.len(),
            });
        }
        let deg: usize = mono
            .iter()
            .zip(src.weights.iter())
            .map(|(&a, &w)| a as usize * w as usize)
            .sum();
        if deg != n {
            return Err(Error::NonIntegralValue(format!(
                "element is not homogeneous of degree {n}: found degree {deg}"
            )));
        }
    }
    let tgt = target_layout(d, r);
    let count = count_monomials(&tgt, n);
    if count > cap {
        return Err(Error::ResourceCap {
            what: format!("target basis of dimension {count} at degree {n}"),
            limit: cap,
        });
    }
    let basis = monomials_of_degree(&tgt, n);
    let index: BTreeMap<&Monomial, usize> = basis.iter().zip(0..).collect();
    let mut out = vec![BigInt::zero(); basis.len()];
    for (mono, coef) in element {
        for (tm, tc) in monomial_image(d, r, &tgt, mono) {
            let idx = *index.get(&tm).expect("image stays in degree n");
            out[idx] += coef * tc;
        }
    }
    Ok(out)
}

/// Rank data of the degree-`n` graded piece of the kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedKernelResult {
    pub degree: usize,
    pub source_dim: usize,
    pub kernel_rank: usize,
    /// When requested: integer coefficient vectors over the canonical
    /// source basis spanning the kernel piece, content-reduced.
    pub kernel_basis: Option<Vec<Vec<BigInt>>>,
}

/// Assemble the substitution matrix over the degree-`n` source basis and
/// run exact elimination. Column ids are assigned in first-encounter order
/// over the canonically ordered rows, so runs are deterministic.
pub fn kernel_rank_at_degree(
    d: &DimensionVector,
    r: u64,
    n: usize,
    cap: u64,
    want_basis: bool,
) -> Result<GradedKernelResult> {
    check_avoiding_rank(d, r)?;
    let basis = graded_basis(d, n, cap)?;
    let tgt = target_layout(d, r);
    let tgt_count = count_monomials(&tgt, n);
    if tgt_count > cap {
        return Err(Error::ResourceCap {
            what: format!("target basis of dimension {tgt_count} at degree {n}"),
            limit: cap,
        });
    }
    let mut col_ids: BTreeMap<Monomial, u32> = BTreeMap::new();
    let mut ech = SparseEchelon::new(tgt_count as usize, want_basis);
    for mono in &basis.generators {
        let image = monomial_image(d, r, &tgt, mono);
        let mut row: Vec<(u32, BigInt)> = image
            .into_iter()
            .map(|(tm, c)| {
                let next = col_ids.len() as u32;
                let id = *col_ids.entry(tm).or_insert(next);
                (id, c)
            })
            .collect();
        row.sort_by_key(|&(c, _)| c);
        ech.push_row(row);
    }
    let kernel_rank = basis.generators.len() - ech.rank();
    let kernel_basis = want_basis.then(|| {
        ech.kernel_basis()
            .iter()
            .map(|rel| {
                let mut v = vec![BigInt::zero(); basis.generators.len()];
                for &(idx, ref c) in rel {
                    v[idx as usize] = c.clone();
                }
                v
            })
            .collect()
    });
    Ok(GradedKernelResult {
        degree: n,
        source_dim: basis.generators.len(),
        kernel_rank,
        kernel_basis,
    })
}

/// Scan degrees `1..=n_max` for the first nonzero kernel piece; its degree
/// and rank are `(C, theta)`.
pub fn lowest_kernel(d: &DimensionVector, r: u64, n_max: usize, cap: u64) -> Result<(u64, u64)> {
    check_avoiding_rank(d, r)?;
    for n in 1..=n_max {
        let res = kernel_rank_at_degree(d, r, n, cap, false)?;
        if res.kernel_rank > 0 {
            return Ok((n as u64, res.kernel_rank as u64));
        }
    }
    Err(Error::KernelNotFound { degree_bound: n_max })
}
