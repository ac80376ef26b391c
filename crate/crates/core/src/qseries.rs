//! Truncated power series in `q` with arbitrary-precision integer
//! coefficients, q-Pochhammer inverses, and the orbit generating series
//! whose lowest term reads off the codimension and the component count.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::dim::DimensionVector;
use crate::error::{Error, Result};
use crate::kostant::visit_kostant_partitions;

/// A formal power series truncated at an inclusive maximal degree.
///
/// Arithmetic never silently mixes truncations: binary operations truncate
/// the result at the smaller of the two operand truncations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>, // length = truncation + 1
}

impl QSeries {
    pub fn zero(truncation: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The single term `c * q^n` (zero if `n` exceeds the truncation).
    pub fn monomial(n: usize, c: BigInt, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if n <= truncation {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "need at least the constant term");
        Self { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-truncate (down) to `truncation`.
    pub fn truncated(&self, truncation: usize) -> QSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(truncation + 1);
        coeffs.resize(truncation + 1, BigInt::zero());
        QSeries { coeffs }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let t = self.truncation().min(other.truncation());
        let mut coeffs = Vec::with_capacity(t + 1);
        for n in 0..=t {
            coeffs.push(&self.coeffs[n] + &other.coeffs[n]);
        }
        QSeries { coeffs }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let t = self.truncation().min(other.truncation());
        let mut coeffs = Vec::with_capacity(t + 1);
        for n in 0..=t {
            coeffs.push(&self.coeffs[n] - &other.coeffs[n]);
        }
        QSeries { coeffs }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let t = self.truncation().min(other.truncation());
        let mut coeffs = vec![BigInt::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs }
    }

    /// Multiplicative inverse modulo `q^{T+1}`; the constant term must be
    /// +1 or -1 so the inverse stays integral.
    pub fn inverse(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if !c0.magnitude().is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let t = self.truncation();
        let mut inv = vec![BigInt::zero(); t + 1];
        inv[0] = c0.clone(); // c0 = ±1 is its own inverse
        for n in 1..=t {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            // c0 * inv[n] = -acc, and c0 = ±1
            inv[n] = -acc * c0;
        }
        Ok(QSeries { coeffs: inv })
    }

    /// Lowest nonzero degree and its coefficient: `(C, theta)`.
    ///
    /// Errors when the series vanishes up to its truncation, which signals
    /// that the truncation was chosen too small.
    pub fn lowest_term(&self) -> Result<(u64, BigInt)> {
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return Ok((n as u64, c.clone()));
            }
        }
        Err(Error::ZeroSeries {
            truncation: self.truncation(),
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match n {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "q")?,
                1 => write!(f, "{a}*q")?,
                _ if a.is_one() => write!(f, "q^{n}")?,
                _ => write!(f, "{a}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.truncation() + 1)
    }
}

/// Extract `(C, theta)` from an orbit generating series.
pub fn extract_c_theta(series: &QSeries) -> Result<(u64, BigInt)> {
    series.lowest_term()
}

// ---------------------------------------------------------------------------
// Pochhammer inverses
// ---------------------------------------------------------------------------

/// `1 / ((1-q)(1-q^2)...(1-q^s))` up to degree `truncation`.
///
/// The degree-`n` coefficient counts the partitions of `n` into at most
/// `s` parts.
pub fn pochhammer_inverse(s: u64, truncation: usize) -> QSeries {
    let mut coeffs = vec![BigInt::zero(); truncation + 1];
    coeffs[0] = BigInt::one();
    // dividing by (1 - q^i) is a running sum with stride i
    for i in 1..=s.min(truncation as u64) as usize {
        for n in i..=truncation {
            let prev = coeffs[n - i].clone();
            coeffs[n] += prev;
        }
    }
    QSeries { coeffs }
}

/// Product of `pochhammer_inverse` over a multiset of nonnegative integers
/// (a dimension vector or the entries of a Kostant partition).
pub fn pochhammer_multi<I: IntoIterator<Item = u64>>(h: I, truncation: usize) -> QSeries {
    let mut acc = QSeries::one(truncation);
    for s in h {
        if s > 0 {
            acc = acc.mul(&pochhammer_inverse(s, truncation));
        }
    }
    acc
}

/// The finite product `(1-q^a)(1-q^{a+1})...(1-q^b)`; empty when `a > b`.
pub fn pochhammer_product(a: u64, b: u64, truncation: usize) -> QSeries {
    let mut acc = QSeries::one(truncation);
    let mut i = a;
    while i <= b {
        let factor = QSeries::one(truncation)
            .sub(&QSeries::monomial(i as usize, BigInt::one(), truncation));
        acc = acc.mul(&factor);
        i += 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Orbit generating series
// ---------------------------------------------------------------------------

/// `Q^r_d` by definition: sum of `q^codim(O_m) * P_m` over all Kostant
/// partitions of `d` with top multiplicity `r`, truncated at `truncation`.
pub fn q_series_bruteforce(
    d: &DimensionVector,
    r: u64,
    truncation: usize,
    cap: u64,
) -> Result<QSeries> {
    check_rank(d, r)?;
    let mut acc = QSeries::zero(truncation);
    visit_kostant_partitions(d, Some(r), cap, &mut |m| {
        let codim = m.orbit_codim();
        if codim as usize > truncation {
            return;
        }
        let rest = truncation - codim as usize;
        let pm = pochhammer_multi(m.entries().iter().copied().filter(|&v| v > 0), rest);
        for (n, c) in pm.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc.coeffs[codim as usize + n] += c;
            }
        }
    })?;
    Ok(acc)
}

/// `Q^r_d` by the closed alternating-sum formula:
/// `P_r * sum_{s=0}^{min d - r} (-1)^s q^{s(s-1)/2} P_s P_{d-r-s}`.
pub fn q_series_closed(d: &DimensionVector, r: u64, truncation: usize) -> Result<QSeries> {
    check_rank(d, r)?;
    let mut acc = QSeries::zero(truncation);
    for s in 0..=(d.min_entry() - r) {
        let shifted = pochhammer_multi(d.entries().iter().map(|&di| di - r - s), truncation);
        let term = pochhammer_inverse(s, truncation).mul(&shifted);
        let binom2 = (s * s.saturating_sub(1) / 2) as usize;
        if binom2 > truncation {
            break;
        }
        let sign = if s % 2 == 0 { 1 } else { -1 };
        for (n, c) in term.coeffs.iter().enumerate() {
            if binom2 + n > truncation {
                break;
            }
            if !c.is_zero() {
                acc.coeffs[binom2 + n] += c * sign;
            }
        }
    }
    Ok(pochhammer_inverse(r, truncation).mul(&acc))
}

fn check_rank(d: &DimensionVector, r: u64) -> Result<()> {
    if r > d.min_entry() {
        return Err(Error::RankOutOfRange {
            rank: r,
            min_dim: d.min_entry(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::dim;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_q = QSeries::one(8).sub(&QSeries::monomial(1, BigInt::one(), 8));
        let inv = one_minus_q.inverse().unwrap();
        assert_eq!(inv.coeffs(), &ints(&[1; 9])[..]);
        assert_eq!(one_minus_q.mul(&inv), QSeries::one(8));
    }

    #[test]
    fn non_unit_inversion_fails() {
        let two = QSeries::monomial(0, BigInt::from(2), 4);
        assert!(matches!(two.inverse(), Err(Error::NonUnitConstantTerm)));
        assert!(QSeries::zero(4).inverse().is_err());
    }

    #[test]
    fn pochhammer_inverse_small() {
        assert_eq!(pochhammer_inverse(0, 5), QSeries::one(5));
        assert_eq!(pochhammer_inverse(1, 5).coeffs(), &ints(&[1; 6])[..]);
        // partitions of n into at most 2 parts: 1,1,2,2,3,3
        assert_eq!(
            pochhammer_inverse(2, 5).coeffs(),
            &ints(&[1, 1, 2, 2, 3, 3])[..]
        );
    }

    #[test]
    fn pochhammer_inverse_counts_partitions() {
        // brute-force oracle: partitions of n with at most s parts
        fn count(n: u64, s: u64, max_part: u64) -> u64 {
            if n == 0 {
                return 1;
            }
            if s == 0 {
                return 0;
            }
            (1..=max_part.min(n))
                .map(|p| count(n - p, s - 1, p))
                .sum()
        }
        for s in 0..=4u64 {
            let ps = pochhammer_inverse(s, 10);
            for n in 0..=10u64 {
                assert_eq!(
                    ps.coeff(n as usize),
                    BigInt::from(count(n, s, n)),
                    "s={s} n={n}"
                );
            }
        }
    }

    #[test]
    fn pochhammer_inverse_multiplies_back_to_one() {
        for s in 0..=5 {
            let prod = pochhammer_product(1, s, 12);
            assert_eq!(prod.mul(&pochhammer_inverse(s, 12)), QSeries::one(12));
        }
    }

    #[test]
    fn pochhammer_multi_cases() {
        assert_eq!(pochhammer_multi([], 6), QSeries::one(6));
        // {1,1}: coefficient n+1 at degree n
        assert_eq!(
            pochhammer_multi([1, 1], 5).coeffs(),
            &ints(&[1, 2, 3, 4, 5, 6])[..]
        );
        // over any multiset the constant term is 1
        assert_eq!(pochhammer_multi([3, 0, 2, 5], 7).coeff(0), BigInt::one());
    }

    #[test]
    fn q_series_paper_examples() {
        let q1 = q_series_bruteforce(&dim(&[2, 2, 2]), 0, 4, 1 << 20).unwrap();
        assert_eq!(q1.coeffs(), &ints(&[0, 0, 0, 1, 6])[..]);
        let q2 = q_series_bruteforce(&dim(&[2, 3, 2]), 0, 5, 1 << 20).unwrap();
        assert_eq!(q2.coeffs(), &ints(&[0, 0, 0, 0, 2, 7])[..]);
        let q3 = q_series_closed(&dim(&[2, 4, 2]), 0, 5).unwrap();
        assert_eq!(q3.coeffs(), &ints(&[0, 0, 0, 0, 1, 4])[..]);
        let q4 = q_series_closed(&dim(&[3, 3, 3]), 0, 11).unwrap();
        assert_eq!(&q4.coeffs()[7..], &ints(&[2, 8, 27, 67, 151])[..]);
    }

    #[test]
    fn q_series_large_closed() {
        let d = dim(&[4, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6]);
        let q = q_series_closed(&d, 0, 15).unwrap();
        assert_eq!(&q.coeffs()[12..], &ints(&[28, 508, 5129, 37424])[..]);
        assert!(q.coeffs()[..12].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn q_series_min_zero_has_constant_term() {
        let q = q_series_bruteforce(&dim(&[3, 0, 3]), 0, 4, 1 << 20).unwrap();
        assert_eq!(q.coeff(0), BigInt::one());
    }

    #[test]
    fn extract_examples() {
        let s = QSeries::from_coeffs(ints(&[0, 0, 0, 1, 6]));
        assert_eq!(extract_c_theta(&s).unwrap(), (3, BigInt::one()));
        let s = QSeries::from_coeffs(ints(&[0, 0, 0, 0, 2, 7]));
        assert_eq!(extract_c_theta(&s).unwrap(), (4, BigInt::from(2)));
        assert_eq!(
            extract_c_theta(&QSeries::one(3)).unwrap(),
            (0, BigInt::one())
        );
        assert!(matches!(
            extract_c_theta(&QSeries::zero(3)),
            Err(Error::ZeroSeries { truncation: 3 })
        ));
    }

    #[test]
    fn infinite_pochhammer_expansion() {
        // (x;q)_inf = sum_s (-1)^s q^{s(s-1)/2} P_s x^s, checked against the
        // partial product over j = 0..=qt (factors beyond qt cannot touch
        // q-degrees <= qt). Series in x with q-series coefficients.
        let (xt, qt) = (6usize, 8usize);
        let mut product: Vec<QSeries> = vec![QSeries::zero(qt); xt + 1];
        product[0] = QSeries::one(qt);
        for j in 0..=qt {
            // multiply by (1 - x q^j)
            let mut next = product.clone();
            for k in (0..xt).rev() {
                let shifted = product[k].mul(&QSeries::monomial(j, BigInt::one(), qt));
                next[k + 1] = next[k + 1].sub(&shifted);
            }
            product = next;
        }
        for (s, got) in product.iter().enumerate() {
            let binom2 = s * s.saturating_sub(1) / 2;
            let mut want = QSeries::zero(qt);
            if binom2 <= qt {
                let ps = pochhammer_inverse(s as u64, qt - binom2);
                for (n, c) in ps.coeffs().iter().enumerate() {
                    want.coeffs[binom2 + n] = if s % 2 == 0 { c.clone() } else { -c };
                }
            }
            assert_eq!(got, &want, "x-degree {s}");
        }
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(
            a in proptest::collection::vec(-9i64..=9, 5),
            b in proptest::collection::vec(-9i64..=9, 5),
            c in proptest::collection::vec(-9i64..=9, 5),
        ) {
            let (a, b, c) = (
                QSeries::from_coeffs(ints(&a)),
                QSeries::from_coeffs(ints(&b)),
                QSeries::from_coeffs(ints(&c)),
            );
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn truncation_is_min_of_operands(ta in 0usize..6, tb in 0usize..6) {
            let a = QSeries::one(ta);
            let b = QSeries::one(tb);
            prop_assert_eq!(a.mul(&b).truncation(), ta.min(tb));
            prop_assert_eq!(a.add(&b).truncation(), ta.min(tb));
        }
    }
}
