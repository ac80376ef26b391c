//! Lace diagrams: dots in columns joined into intervals, one diagram per
//! orbit up to column permutations. A diagram reads off as a tuple of
//! partial permutation matrices lying in the orbit it encodes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::dim::DimensionVector;
use crate::error::{Error, Result};
use crate::exact::{MatrixTuple, RatMatrix};
use crate::kostant::KostantPartition;

/// One lace: an interval `[i, j]` of columns together with the dot index it
/// occupies in each of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lace {
    pub start: usize,
    pub end: usize,
    /// Dot index in columns `start..=end`, injective per column across the
    /// whole diagram.
    pub dots: Vec<usize>,
}

impl Lace {
    pub fn is_horizontal(&self) -> bool {
        self.dots.windows(2).all(|w| w[0] == w[1])
    }
}

/// A full diagram: `d_i` dots in column `i`, partitioned into laces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaceDiagram {
    d: DimensionVector,
    laces: Vec<Lace>,
}

impl LaceDiagram {
    pub fn dimension_vector(&self) -> &DimensionVector {
        &self.d
    }

    pub fn laces(&self) -> &[Lace] {
        &self.laces
    }

    /// The Kostant partition this diagram encodes: interval multiplicities.
    pub fn kostant_partition(&self) -> KostantPartition {
        let n = self.d.arrows();
        let mut triples: Vec<(usize, usize, u64)> = Vec::new();
        for lace in &self.laces {
            if let Some(t) = triples
                .iter_mut()
                .find(|(i, j, _)| *i == lace.start && *j == lace.end)
            {
                t.2 += 1;
            } else {
                triples.push((lace.start, lace.end, 1));
            }
        }
        KostantPartition::from_triples(n, &triples).expect("laces fit the columns")
    }

    /// The tuple of partial permutation matrices this diagram encodes: a
    /// dot connected to a dot in the next column maps the corresponding
    /// basis vector there; unconnected dots map to zero.
    pub fn matrix_tuple(&self) -> MatrixTuple {
        let e = self.d.entries();
        let n = self.d.arrows();
        let mut mats: Vec<RatMatrix> = (1..=n)
            .map(|k| RatMatrix::zero(e[k] as usize, e[k - 1] as usize))
            .collect();
        for lace in &self.laces {
            for (off, w) in lace.dots.windows(2).enumerate() {
                let col = lace.start + off; // arrow col -> col+1
                mats[col].set(w[1], w[0], BigRational::from(BigInt::one()));
            }
        }
        MatrixTuple::new(mats).expect("diagram shapes chain")
    }
}

/// Build a lace diagram for `m` greedily: intervals in order of decreasing
/// length (ties by left endpoint), each taking the first free dot in every
/// column of its span. Any placement order yields the same orbit; this one
/// is fixed so representatives are deterministic.
pub fn lace_diagram(m: &KostantPartition) -> LaceDiagram {
    let d = m.dimension_vector();
    let n = m.arrows();
    let mut intervals: Vec<(usize, usize)> = Vec::new();
    for i in 0..=n {
        for j in i..=n {
            for _ in 0..m.get(i, j) {
                intervals.push((i, j));
            }
        }
    }
    intervals.sort_by_key(|&(i, j)| (usize::MAX - (j - i), i));
    let mut used: Vec<Vec<bool>> = d
        .entries()
        .iter()
        .map(|&c| vec![false; c as usize])
        .collect();
    let mut laces = Vec::with_capacity(intervals.len());
    for (i, j) in intervals {
        let mut dots = Vec::with_capacity(j - i + 1);
        for (k, col_used) in used.iter_mut().enumerate().take(j + 1).skip(i) {
            let t = col_used
                .iter()
                .position(|&u| !u)
                .unwrap_or_else(|| panic!("column {k} ran out of dots"));
            col_used[t] = true;
            dots.push(t);
        }
        laces.push(Lace { start: i, end: j, dots });
    }
    LaceDiagram { d, laces }
}

/// A tuple of partial permutation matrices in the orbit of `m`.
pub fn lace_representative(m: &KostantPartition) -> MatrixTuple {
    lace_diagram(m).matrix_tuple()
}

/// A lace diagram for `m` in which every lace stays in one row. Exists
/// exactly because the dimension vector is weakly increasing: placing the
/// intervals by ascending left endpoint, the first row free at the left
/// column is free across the whole span.
pub fn horizontal_lace_diagram(m: &KostantPartition) -> Result<LaceDiagram> {
    let d = m.dimension_vector();
    if !d.is_weakly_increasing() {
        return Err(Error::NotWeaklyIncreasing(d.to_string()));
    }
    let n = m.arrows();
    let mut intervals: Vec<(usize, usize)> = Vec::new();
    for i in 0..=n {
        for j in i..=n {
            for _ in 0..m.get(i, j) {
                intervals.push((i, j));
            }
        }
    }
    intervals.sort(); // ascending left endpoint (ties by right endpoint)
    let mut used: Vec<Vec<bool>> = d
        .entries()
        .iter()
        .map(|&c| vec![false; c as usize])
        .collect();
    let mut laces = Vec::with_capacity(intervals.len());
    for (i, j) in intervals {
        let row = used[i]
            .iter()
            .position(|&u| !u)
            .expect("column sums bound the laces through a column");
        for col_used in used.iter_mut().take(j + 1).skip(i) {
            debug_assert!(!col_used[row]);
            col_used[row] = true;
        }
        laces.push(Lace {
            start: i,
            end: j,
            dots: vec![row; j - i + 1],
        });
    }
    Ok(LaceDiagram { d, laces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::dim;
    use crate::kostant::enumerate_kostant_partitions;

    #[test]
    fn single_entry_representative() {
        let m = KostantPartition::from_triples(1, &[(0, 1, 1)]).unwrap();
        let t = lace_representative(&m);
        assert_eq!(t.matrices()[0].get(0, 0), &BigRational::one());
        assert_eq!(t.rank_pattern(), m.to_rank_pattern());
    }

    #[test]
    fn first_example_representative_ranks() {
        let m = KostantPartition::from_triples(
            3,
            &[
                (0, 0, 2),
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (1, 1, 2),
                (1, 3, 1),
                (2, 3, 2),
                (3, 3, 2),
            ],
        )
        .unwrap();
        let t = lace_representative(&m);
        assert_eq!(t.rank_pattern(), m.to_rank_pattern());
        // partial permutation matrices: 0/1 entries, at most one 1 per line
        for a in t.matrices() {
            for i in 0..a.rows() {
                let ones = (0..a.cols()).filter(|&j| a.get(i, j).is_one()).count();
                assert!(ones <= 1);
            }
            for j in 0..a.cols() {
                let ones = (0..a.rows()).filter(|&i| a.get(i, j).is_one()).count();
                assert!(ones <= 1);
            }
        }
    }

    #[test]
    fn representatives_match_rank_patterns_small() {
        for d in [dim(&[2, 2, 3]), dim(&[2, 2, 2])] {
            for m in enumerate_kostant_partitions(&d, 1 << 20).unwrap() {
                let t = lace_representative(&m);
                assert_eq!(t.rank_pattern(), m.to_rank_pattern(), "{m}");
                assert_eq!(lace_diagram(&m).kostant_partition(), m);
            }
        }
    }

    #[test]
    fn horizontal_requires_weakly_increasing() {
        // the (1,2,1) partition that forces a bent lace
        let m = KostantPartition::from_triples(2, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(matches!(
            horizontal_lace_diagram(&m),
            Err(Error::NotWeaklyIncreasing(_))
        ));
        // the generic greedy construction still works, with a bend
        let t = lace_representative(&m);
        assert_eq!(t.rank_pattern(), m.to_rank_pattern());
    }

    #[test]
    fn horizontal_constant_full_block() {
        let m = KostantPartition::from_triples(2, &[(0, 2, 3)]).unwrap();
        let diag = horizontal_lace_diagram(&m).unwrap();
        assert_eq!(diag.laces().len(), 3);
        assert!(diag.laces().iter().all(|l| l.is_horizontal()));
        assert!(diag
            .laces()
            .iter()
            .all(|l| l.start == 0 && l.end == 2));
    }

    #[test]
    fn horizontal_everywhere_on_increasing_d() {
        for d in [dim(&[2, 2, 3]), dim(&[1, 2, 2, 3])] {
            for m in enumerate_kostant_partitions(&d, 1 << 20).unwrap() {
                let diag = horizontal_lace_diagram(&m).unwrap();
                assert!(diag.laces().iter().all(|l| l.is_horizontal()), "{m}");
                assert_eq!(diag.kostant_partition(), m);
            }
        }
    }
}
