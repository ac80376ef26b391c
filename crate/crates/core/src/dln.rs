//! Deep linear networks: rank reductions, fiber codimensions of the
//! multiplication map, and the real log-canonical threshold/multiplicity of
//! the square-loss at a realisable target.
//!
//! The loss `|mult(A) - B|^2` vanishes exactly on the fiber over `B`, and
//! its rlct is half the fiber codimension: only the rank of `B` enters, so
//! none of the computations here materialize `B`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dim::DimensionVector;
use crate::error::{Error, Result};
use crate::exact::{MatrixTuple, RatMatrix};
use crate::qip::{codim_closed_form, relevant_count, theta_closed_form};

/// Everything the analysis produces for one `(d, r)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlnReport {
    pub d: DimensionVector,
    pub r: u64,
    /// Codimension of the rank-`r` locus.
    pub sigma_codim: u64,
    /// Codimension of the fiber over a rank-`r` target.
    pub fiber_codim: u64,
    /// Number of top-dimensional components (same for locus and fiber).
    pub theta: num_bigint::BigUint,
    /// Exactly `fiber_codim / 2`.
    pub rlct: BigRational,
    /// The multiplicity formula `m^2 {S/m}(1 - {S/m})`, always an integer.
    pub rlcm: u64,
    /// Set when `{S/m} = 0`, where the multiplicity formula returns 0 even
    /// though a zeta-function pole has order at least 1. Reported verbatim.
    pub rlcm_boundary: bool,
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

/// `d - r` componentwise. The rank-`r` locus of `d` and the rank-0 locus of
/// the reduction share their `(C, theta)`.
pub fn reduce_rank(d: &DimensionVector, r: u64) -> Result<DimensionVector> {
    d.reduce(r)
}

/// Codimension of the fiber of the multiplication map over any matrix of
/// rank `r`: the locus codimension plus the codimension `r(d_0 + d_N - r)`
/// of the rank-`r` matrices in the target space.
pub fn fiber_codim(d: &DimensionVector, r: u64) -> Result<u64> {
    check_rank(d, r)?;
    let e = d.entries();
    let correction = r * (e[0] + e[e.len() - 1] - r);
    Ok(codim_closed_form(d, r)? + correction)
}

/// Real log-canonical threshold of the square loss at a rank-`r` target:
/// half the fiber codimension, as an exact rational.
pub fn rlct(d: &DimensionVector, r: u64) -> Result<BigRational> {
    Ok(BigRational::new(
        BigInt::from(fiber_codim(d, r)?),
        BigInt::from(2),
    ))
}

/// Multiplicity `m^2 {S/m}(1 - {S/m})` evaluated on the reduced sorted
/// vector; equals `delta'(m - delta')` for `delta' = S mod m`, hence an
/// integer. Returns the value and the boundary flag (`{S/m} = 0`).
pub fn rlcm(d: &DimensionVector, r: u64) -> Result<(u64, bool)> {
    check_rank(d, r)?;
    if r == d.min_entry() {
        // dense reduced locus; the formula degenerates to 0
        return Ok((0, true));
    }
    let c = d.reduce(r)?.sorted();
    let m = relevant_count(&c)? as u64;
    let s: u64 = c.entries()[..=(m as usize)].iter().sum();
    let rem = s % m;
    Ok((rem * (m - rem), rem == 0))
}

/// Full report for one `(d, r)`.
pub fn analyze(d: &DimensionVector, r: u64) -> Result<DlnReport> {
    let sigma_codim = codim_closed_form(d, r)?;
    let fiber = fiber_codim(d, r)?;
    let theta = theta_closed_form(d, r)?;
    let (rlcm_value, rlcm_boundary) = rlcm(d, r)?;
    Ok(DlnReport {
        d: d.clone(),
        r,
        sigma_codim,
        fiber_codim: fiber,
        theta,
        rlct: BigRational::new(BigInt::from(fiber), BigInt::from(2)),
        rlcm: rlcm_value,
        rlcm_boundary,
    })
}

/// The square loss `|mult(t) - b|^2` itself, for sanity checks against
/// explicit representatives.
pub fn evaluate_loss(t: &MatrixTuple, b: &RatMatrix) -> Result<BigRational> {
    let prod = t.product();
    if prod.rows() != b.rows() || prod.cols() != b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "product is {}x{}, target is {}x{}",
            prod.rows(),
            prod.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(prod.sub(b)?.frobenius_sq())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::top_components_bruteforce;
    use crate::dim::dim;
    use crate::lace::lace_representative;
    use crate::kostant::KostantPartition;
    use num_traits::Zero;

    #[test]
    fn reduce_rank_cases() {
        let d = dim(&[2, 2, 2]);
        assert_eq!(reduce_rank(&d, 0).unwrap(), d);
        assert_eq!(reduce_rank(&d, 2).unwrap(), dim(&[0, 0, 0]));
        assert!(reduce_rank(&d, 3).is_err());
    }

    #[test]
    fn reduce_rank_preserves_c_theta() {
        let cap = 1 << 22;
        let a = top_components_bruteforce(&dim(&[5, 7, 6]), 3, cap).unwrap();
        let b = top_components_bruteforce(&dim(&[2, 4, 3]), 0, cap).unwrap();
        assert_eq!((a.c, a.theta), (b.c, b.theta));
    }

    #[test]
    fn fiber_codim_cases() {
        assert_eq!(fiber_codim(&dim(&[2, 2, 2]), 0).unwrap(), 3);
        assert_eq!(fiber_codim(&dim(&[2, 2, 2]), 2).unwrap(), 4);
        // r = min(d): the locus is dense, only the rank stratum contributes
        let d = dim(&[2, 3, 4]);
        assert_eq!(fiber_codim(&d, 2).unwrap(), 2 * (2 + 4 - 2));
        assert_eq!(
            theta_closed_form(&d, 2).unwrap(),
            num_bigint::BigUint::from(1u64)
        );
    }

    #[test]
    fn rlct_worked_values() {
        let half = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(2));
        assert_eq!(rlct(&dim(&[2, 2, 2]), 0).unwrap(), half(3));
        assert_eq!(rlct(&dim(&[2, 2, 3]), 0).unwrap(), half(4));
        assert_eq!(rlct(&dim(&[7, 7, 8, 9, 12, 13]), 0).unwrap(), half(39));
    }

    #[test]
    fn rlcm_worked_values() {
        assert_eq!(rlcm(&dim(&[2, 2, 3]), 0).unwrap(), (1, false));
        assert_eq!(rlcm(&dim(&[2, 2, 2]), 0).unwrap(), (0, true));
        assert_eq!(rlcm(&dim(&[7, 7, 8, 9, 12, 13]), 0).unwrap(), (2, false));
    }

    #[test]
    fn rlcm_bound() {
        // always an integer in [0, m^2/4]
        for d in [dim(&[2, 2, 3]), dim(&[3, 4, 5, 6]), dim(&[1, 1, 1, 1])] {
            for r in 0..=d.min_entry() {
                let (v, _) = rlcm(&d, r).unwrap();
                if r < d.min_entry() {
                    let m = relevant_count(&d.reduce(r).unwrap().sorted()).unwrap() as u64;
                    assert!(v <= m * m / 4);
                }
            }
        }
    }

    #[test]
    fn loss_on_representatives() {
        let m = KostantPartition::from_triples(2, &[(0, 2, 1), (0, 0, 1), (1, 2, 1), (2, 2, 1)])
            .unwrap();
        let t = lace_representative(&m);
        let b = t.product();
        assert!(evaluate_loss(&t, &b).unwrap().is_zero());

        let d = dim(&[2, 2, 2]);
        let zero = MatrixTuple::zero(&d);
        let mut target = RatMatrix::zero(2, 2);
        target.set(0, 0, BigRational::from(BigInt::from(1)));
        target.set(1, 1, BigRational::from(BigInt::from(2)));
        assert_eq!(
            evaluate_loss(&zero, &target).unwrap(),
            BigRational::from(BigInt::from(5))
        );

        let bad = RatMatrix::zero(3, 3);
        assert!(evaluate_loss(&zero, &bad).is_err());
    }

    #[test]
    fn report_is_consistent() {
        let rep = analyze(&dim(&[2, 2, 3]), 0).unwrap();
        assert_eq!(rep.sigma_codim, 4);
        assert_eq!(rep.fiber_codim, 4);
        assert_eq!(rep.rlct, BigRational::from(BigInt::from(2)));
        assert_eq!(rep.rlcm, 1);
        assert!(!rep.rlcm_boundary);
        assert_eq!(
            rep.rlct,
            BigRational::new(BigInt::from(rep.fiber_codim), BigInt::from(2))
        );
    }
}
