//! The quadratic integer program over compositions of the smallest
//! dimension, its exhaustive solver, and the closed-form solution via the
//! closest-vector problem on the simplex hyperplane.
//!
//! For a weakly increasing `d'` the objective is
//! `G(e) = sum_{1<=j<=i<=N} e_i (e_j + d'_j - d'_{j-1})` over nonnegative
//! integer vectors with `sum e_i = d'_0`. Its minimum is the codimension of
//! the rank-0 locus and the number of minimizers is the number of
//! top-dimensional components. Completing the square turns the program into
//! finding the integer points on the hyperplane `sum x_i = d'_0` closest to
//! `s = (d'_0 - d'_1, ..., d'_0 - d'_N)`, which the standard rounding rule
//! for the A_n root lattice solves exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::dim::DimensionVector;
use crate::error::{Error, Result};

/// A QIP instance: the sorted dimension vector and the budget `d'_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QipInstance {
    d_sorted: DimensionVector,
}

impl QipInstance {
    pub fn new(d: &DimensionVector) -> Self {
        Self {
            d_sorted: d.sorted(),
        }
    }

    pub fn d_sorted(&self) -> &DimensionVector {
        &self.d_sorted
    }

    /// Number of variables `e_1..e_N`.
    pub fn variables(&self) -> usize {
        self.d_sorted.arrows()
    }

    /// The common value of `sum e_i`, namely `d'_0`.
    pub fn budget(&self) -> u64 {
        self.d_sorted.entries()[0]
    }

    /// `G(e)`. All terms are nonnegative because `d'` is sorted.
    pub fn objective(&self, e: &[u64]) -> Result<u64> {
        let n = self.variables();
        if e.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: e.len(),
            });
        }
        let dp = self.d_sorted.entries();
        let mut total: u64 = 0;
        for i in 1..=n {
            if e[i - 1] == 0 {
                continue;
            }
            for j in 1..=i {
                let term = e[i - 1]
                    .checked_mul(e[j - 1] + (dp[j] - dp[j - 1]))
                    .and_then(|t| total.checked_add(t))
                    .ok_or_else(|| Error::NonIntegralValue("objective overflow".into()))?;
                total = term;
            }
        }
        Ok(total)
    }

    /// Number of feasible points, `C(budget + N - 1, N - 1)`.
    pub fn feasible_count(&self) -> BigUint {
        let n = BigUint::from(self.variables() as u64 - 1);
        binomial(
            BigUint::from(self.budget()) + &n,
            n,
        )
    }

    /// Exhaustive scan over all compositions, in lexicographic order.
    pub fn enumerate(&self, cap: u64) -> Result<QipSolution> {
        if self.feasible_count() > BigUint::from(cap) {
            return Err(Error::ResourceCap {
                what: format!("QIP scan over {} compositions", self.feasible_count()),
                limit: cap,
            });
        }
        let n = self.variables();
        let mut e = vec![0u64; n];
        let mut best: Option<u64> = None;
        let mut minimizers: Vec<Vec<u64>> = Vec::new();
        self.scan(&mut e, 0, self.budget(), &mut best, &mut minimizers)?;
        Ok(QipSolution {
            optimum: best.expect("the simplex always has integer points"),
            minimizers,
        })
    }

    fn scan(
        &self,
        e: &mut Vec<u64>,
        pos: usize,
        left: u64,
        best: &mut Option<u64>,
        minimizers: &mut Vec<Vec<u64>>,
    ) -> Result<()> {
        let n = self.variables();
        if pos == n - 1 {
            e[pos] = left;
            let g = self.objective(e)?;
            match best {
                Some(b) if g > *b => {}
                Some(b) if g == *b => minimizers.push(e.clone()),
                _ => {
                    *best = Some(g);
                    minimizers.clear();
                    minimizers.push(e.clone());
                }
            }
            e[pos] = 0;
            return Ok(());
        }
        for v in 0..=left {
            e[pos] = v;
            self.scan(e, pos + 1, left - v, best, minimizers)?;
        }
        e[pos] = 0;
        Ok(())
    }
}

/// Result of an exhaustive QIP scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QipSolution {
    pub optimum: u64,
    /// All minimizing vectors, lexicographically ascending.
    pub minimizers: Vec<Vec<u64>>,
}

impl QipSolution {
    pub fn count(&self) -> usize {
        self.minimizers.len()
    }
}

// ---------------------------------------------------------------------------
// Closest point on the simplex hyperplane
// ---------------------------------------------------------------------------

/// Largest `l` with `sum_{i=0}^{l} d'_i >= l * d'_l`: the number of
/// coordinates that survive the projection (the optimum is supported on the
/// first `m` coordinates). The defining function is weakly decreasing in
/// `l`, so the maximum is well defined; it needs `d'_0 >= 1`.
pub fn relevant_count(d_sorted: &DimensionVector) -> Result<usize> {
    ensure_sorted(d_sorted)?;
    if d_sorted.entries()[0] == 0 {
        return Err(Error::DegenerateRelevantCount);
    }
    Ok(relevant_count_unchecked(d_sorted.entries()))
}

fn relevant_count_unchecked(dp: &[u64]) -> usize {
    let n = dp.len() - 1;
    let mut best = 1;
    let mut prefix = dp[0];
    for l in 1..=n {
        prefix += dp[l];
        if prefix >= (l as u64) * dp[l] {
            best = l;
        }
    }
    best
}

fn ensure_sorted(d: &DimensionVector) -> Result<()> {
    if !d.is_weakly_increasing() {
        return Err(Error::NotWeaklyIncreasing(d.to_string()));
    }
    Ok(())
}

/// Coordinate-wise nearest integer with `r(x) = floor(x + 1/2)`; exact on
/// rationals, half-integers round up.
fn round_half_up(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// The full closest-point data for a sorted dimension vector: target point,
/// projection, rounding, defect, correction vectors, closest points, and
/// squared distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosestPointResult {
    /// Number of relevant coordinates `m`.
    pub m_relevant: usize,
    /// `s = (d'_0 - d'_1, ..., d'_0 - d'_N)`.
    pub s: Vec<i64>,
    /// Its truncation to the first `m` coordinates.
    pub s_hat: Vec<i64>,
    /// Projection of `s_hat` onto the hyperplane, `p_hat_i = S/m - d'_i`.
    pub p_hat: Vec<BigRational>,
    /// `r(p_hat)` rounded coordinate-wise.
    pub rounded: Vec<i64>,
    /// Defect `delta = d'_0 - sum(rounded) = S - m*floor(S/m + 1/2)`.
    pub delta: i64,
    /// Sign of the defect.
    pub epsilon: i8,
    /// The closest integer points on the hyperplane, `rounded + Delta_i`.
    pub v_hats: Vec<Vec<i64>>,
    /// Common squared distance from `s_hat` to each closest point.
    pub d_hat: u64,
    /// Squared distance in the ambient space, adding the dropped tail.
    pub d_full: u64,
}

/// Solve the closest-point problem for a weakly increasing `d'` with
/// `d'_0 >= 1`, following the A_n-lattice rounding rule: round the
/// projection coordinate-wise, then fix the hyperplane defect `delta` by
/// adding `sign(delta)` to `|delta|` of the coordinates in every possible
/// way.
pub fn closest_simplex_points(d_sorted: &DimensionVector) -> Result<ClosestPointResult> {
    ensure_sorted(d_sorted)?;
    let dp = d_sorted.entries();
    if dp[0] == 0 {
        return Err(Error::DegenerateRelevantCount);
    }
    let n = d_sorted.arrows();
    let m = relevant_count_unchecked(dp);
    let d0 = dp[0] as i64;
    let s: Vec<i64> = (1..=n).map(|i| d0 - dp[i] as i64).collect();
    let s_hat: Vec<i64> = s[..m].to_vec();
    let big_s: i64 = dp[..=m].iter().map(|&x| x as i64).sum();
    let p_hat: Vec<BigRational> = (1..=m)
        .map(|i| {
            BigRational::new(BigInt::from(big_s), BigInt::from(m as i64))
                - BigRational::from(BigInt::from(dp[i] as i64))
        })
        .collect();
    let rounded: Vec<i64> = p_hat
        .iter()
        .map(|x| round_half_up(x).to_i64().expect("desk-scale rounding"))
        .collect();
    let delta = d0 - rounded.iter().sum::<i64>();
    let epsilon: i8 = match delta.cmp(&0) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => -1,
    };
    // all ways to spread |delta| corrections of epsilon over m coordinates,
    // positions in lexicographic order
    let k = delta.unsigned_abs() as usize;
    let mut v_hats = Vec::new();
    let mut pick = Vec::with_capacity(k);
    combinations(m, k, 0, &mut pick, &mut |positions| {
        let mut v = rounded.clone();
        for &p in positions {
            v[p] += epsilon as i64;
        }
        v_hats.push(v);
    });
    let sq = |v: &[i64]| -> u64 {
        v.iter()
            .zip(s_hat.iter())
            .map(|(a, b)| ((a - b) * (a - b)) as u64)
            .sum()
    };
    let d_hat = sq(&v_hats[0]);
    debug_assert!(v_hats.iter().all(|v| sq(v) == d_hat));
    let tail: u64 = (m + 1..=n)
        .map(|i| {
            let t = dp[i] - dp[0];
            t * t
        })
        .sum();
    let d_full = d_hat + tail;
    Ok(ClosestPointResult {
        m_relevant: m,
        s,
        s_hat,
        p_hat,
        rounded,
        delta,
        epsilon,
        v_hats,
        d_hat,
        d_full,
    })
}

fn combinations(n: usize, k: usize, start: usize, pick: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in start..n {
        pick.push(i);
        combinations(n, k, i + 1, pick, f);
        pick.pop();
    }
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Codimension of the rank-`<= r` locus in closed form.
///
/// Reduces to rank 0 on `d - r` first, then evaluates
/// `m/2 {S/m}(1-{S/m}) - m(m-1)/2 (S/m)^2 + sum_{i<j<=m} c_i c_j`
/// on the reduced sorted vector `c`, in exact rational arithmetic with an
/// integrality check. The `r = min(d)` case is the dense locus.
pub fn codim_closed_form(d: &DimensionVector, r: u64) -> Result<u64> {
    if r > d.min_entry() {
        return Err(Error::RankOutOfRange {
            rank: r,
            min_dim: d.min_entry(),
        });
    }
    if r == d.min_entry() {
        return Ok(0);
    }
    let c = d.reduce(r)?.sorted();
    let ce = c.entries();
    let m = relevant_count_unchecked(ce);
    let s: u64 = ce[..=m].iter().sum();
    let (mq, sq) = (BigInt::from(m as u64), BigInt::from(s));
    let frac = fractional_part(&BigRational::new(sq.clone(), mq.clone()));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let term1 = BigRational::from(mq.clone()) * &half * &frac
        * (BigRational::one() - &frac);
    let term2 = BigRational::from(&mq * (&mq - BigInt::one())) * &half
        * BigRational::new(sq.clone(), mq.clone())
        * BigRational::new(sq, mq);
    let mut pairs = BigInt::zero();
    for i in 0..=m {
        for j in (i + 1)..=m {
            pairs += BigInt::from(ce[i]) * BigInt::from(ce[j]);
        }
    }
    let total = term1 - term2 + BigRational::from(pairs);
    if !total.is_integer() {
        return Err(Error::NonIntegralValue(format!(
            "closed-form codimension of {d} at rank {r} gave {total}"
        )));
    }
    total
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::NonIntegralValue("closed-form codimension is negative or huge".into()))
}

/// Number of top-dimensional components in closed form:
/// `binomial(m, |delta|)` with `delta = S - m*floor(S/m + 1/2)` computed on
/// the reduced sorted vector. The formula's `delta` can be negative; the
/// correction vectors have `|delta|` nonzero coordinates, so the binomial
/// takes `|delta|`.
pub fn theta_closed_form(d: &DimensionVector, r: u64) -> Result<BigUint> {
    if r > d.min_entry() {
        return Err(Error::RankOutOfRange {
            rank: r,
            min_dim: d.min_entry(),
        });
    }
    if r == d.min_entry() {
        return Ok(BigUint::one());
    }
    let c = d.reduce(r)?.sorted();
    let ce = c.entries();
    let m = relevant_count_unchecked(ce);
    let s: i64 = ce[..=m].iter().map(|&x| x as i64).sum();
    let delta = s
        - (m as i64)
            * round_half_up(&BigRational::new(BigInt::from(s), BigInt::from(m as i64)))
                .to_i64()
                .expect("desk scale");
    Ok(binomial(
        BigUint::from(m as u64),
        BigUint::from(delta.unsigned_abs()),
    ))
}

fn fractional_part(x: &BigRational) -> BigRational {
    x - BigRational::from(x.floor().to_integer())
}

/// `delta` via the fractional-part case split: `m{S/m}` when the rounding
/// defect is nonnegative, `m{S/m} - m` otherwise. Kept alongside the direct
/// definition so the two expressions can be checked against each other.
pub fn delta_by_fractional_part(s: i64, m: i64) -> i64 {
    let rem = s.mod_floor(&m); // m * {S/m}
    if 2 * rem < m {
        rem
    } else {
        rem - m
    }
}
