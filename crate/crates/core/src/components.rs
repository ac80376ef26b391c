//! Irreducible components of the loci of tuples with bounded product rank,
//! by direct orbit enumeration: the components of the rank-`<= r` locus
//! are the minimal orbit rank patterns with top rank at most `r`, and the
//! top-dimensional ones are the minimal-codimension orbits with top rank
//! exactly `r`.

use num_bigint::BigUint;

use crate::dim::DimensionVector;
use crate::error::{Error, Result};
use crate::kostant::{visit_kostant_partitions, KostantPartition, RankPattern};

/// An orbit, carried in both combinatorial codes, with its codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDescriptor {
    pub kostant: KostantPartition,
    pub rank: RankPattern,
    pub codim: u64,
    /// Rank of the total product on this orbit (`r_0N = m_0N`).
    pub top_rank: u64,
}

impl OrbitDescriptor {
    pub fn from_kostant(m: KostantPartition) -> Self {
        let rank = m.to_rank_pattern();
        let codim = m.orbit_codim();
        let top_rank = m.top_multiplicity();
        Self {
            kostant: m,
            rank,
            codim,
            top_rank,
        }
    }
}

/// How a (C, theta) value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    QSeries,
    QipEnumeration,
    ClosedForm,
    AvoidingIdeal,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::BruteForce => "brute",
            Method::QSeries => "qseries",
            Method::QipEnumeration => "qip",
            Method::ClosedForm => "closed",
            Method::AvoidingIdeal => "ideal",
        }
    }
}

/// Codimension `C` of the top-dimensional components, their number `theta`,
/// and the witnesses when the producing method has them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub c: u64,
    pub theta: BigUint,
    pub witnesses: Vec<OrbitDescriptor>,
    pub method: Method,
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

/// All irreducible components of the closure of the rank-`r` locus: the
/// orbit rank patterns with `r_0N <= r` that are maximal in the entry-wise
/// order. An orbit closure lies inside another's exactly when its pattern
/// is entry-wise smaller, so the maximal patterns are the closures
/// contained in no other. Canonical (lexicographic) order on the Kostant
/// codes.
pub fn enumerate_components(
    d: &DimensionVector,
    r: u64,
    cap: u64,
) -> Result<Vec<OrbitDescriptor>> {
    check_rank(d, r)?;
    let mut orbits: Vec<OrbitDescriptor> = Vec::new();
    for top in 0..=r {
        visit_kostant_partitions(d, Some(top), cap, &mut |m| {
            orbits.push(OrbitDescriptor::from_kostant(m.clone()));
        })?;
    }
    let mut maximal: Vec<OrbitDescriptor> = orbits
        .iter()
        .filter(|o| {
            !orbits
                .iter()
                .any(|p| p.rank != o.rank && o.rank.dominated_by(&p.rank))
        })
        .cloned()
        .collect();
    maximal.sort_by(|a, b| a.kostant.cmp(&b.kostant));
    Ok(maximal)
}

/// `(C, theta)` for the rank-`r` locus by scanning every orbit with top
/// rank exactly `r`: `C` is the smallest codimension and `theta` counts the
/// orbits attaining it. The witnesses are those orbits, in canonical order.
pub fn top_components_bruteforce(
    d: &DimensionVector,
    r: u64,
    cap: u64,
) -> Result<ComponentReport> {
    check_rank(d, r)?;
    let mut best: Option<u64> = None;
    let mut witnesses: Vec<KostantPartition> = Vec::new();
    visit_kostant_partitions(d, Some(r), cap, &mut |m| {
        let codim = m.orbit_codim();
        match best {
            Some(b) if codim > b => {}
            Some(b) if codim == b => witnesses.push(m.clone()),
            _ => {
                best = Some(codim);
                witnesses.clear();
                witnesses.push(m.clone());
            }
        }
    })?;
    let c = best.expect("every feasible rank has at least one orbit");
    witnesses.sort_unstable();
    Ok(ComponentReport {
        c,
        theta: BigUint::from(witnesses.len()),
        witnesses: witnesses
            .into_iter()
            .map(OrbitDescriptor::from_kostant)
            .collect(),
        method: Method::BruteForce,
    })
}
