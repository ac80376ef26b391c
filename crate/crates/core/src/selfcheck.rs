//! Cross-method agreement sweep: for every dimension vector within a size
//! bound and every feasible rank, the brute-force orbit scan, the closed
//! q-series, the QIP enumeration, and the closed formula must all report
//! the same `(C, theta)`, and the values must be invariant under
//! permutations of the dimension vector.
//!
//! The brute-force leg takes the orbit-codimension function as a
//! parameter so tests can inject a deliberately wrong one and watch the
//! sweep catch it.

use num_bigint::BigUint;

use crate::dim::DimensionVector;
use crate::error::{Error, Result};
use crate::kostant::{visit_kostant_partitions, KostantPartition};
use crate::qip::{codim_closed_form, theta_closed_form, QipInstance};
use crate::qseries::{extract_c_theta, q_series_closed};

#[derive(Debug, Clone)]
pub struct SelfcheckConfig {
    /// Check every `d` with positive entries and total at most this bound.
    pub total_bound: u64,
    /// Enumeration cap passed to the brute-force legs.
    pub cap: u64,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        Self {
            total_bound: 9,
            cap: 1 << 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfcheckSummary {
    pub dimension_vectors: u64,
    pub cases: u64,
}

/// Run the sweep with the real codimension function.
pub fn run_selfcheck(cfg: &SelfcheckConfig) -> Result<SelfcheckSummary> {
    run_selfcheck_with_codim(cfg, &|m| m.orbit_codim())
}

/// Run the sweep with an injected orbit-codimension function for the
/// brute-force leg. Returns `MethodDisagreement` naming the first
/// counterexample.
pub fn run_selfcheck_with_codim(
    cfg: &SelfcheckConfig,
    codim: &dyn Fn(&KostantPartition) -> u64,
) -> Result<SelfcheckSummary> {
    let mut summary = SelfcheckSummary {
        dimension_vectors: 0,
        cases: 0,
    };
    for total in 2..=cfg.total_bound {
        for d in compositions(total) {
            summary.dimension_vectors += 1;
            check_one(cfg, &d, codim, &mut summary)?;
        }
    }
    Ok(summary)
}

fn check_one(
    cfg: &SelfcheckConfig,
    d: &DimensionVector,
    codim: &dyn Fn(&KostantPartition) -> u64,
    summary: &mut SelfcheckSummary,
) -> Result<()> {
    for r in 0..=d.min_entry() {
        summary.cases += 1;
        let closed = (codim_closed_form(d, r)?, theta_closed_form(d, r)?);
        let brute = brute_with(d, r, cfg.cap, codim)?;
        if brute != closed {
            return Err(disagree(d, r, "brute force", &brute, "closed form", &closed));
        }
        let series = q_series_closed(d, r, closed.0 as usize + 2)?;
        let (qc, qt) = extract_c_theta(&series)?;
        let qseries = (qc, qt.to_biguint().ok_or_else(|| {
            Error::MethodDisagreement(format!("negative leading coefficient for {d} r={r}"))
        })?);
        if qseries != closed {
            return Err(disagree(d, r, "q-series", &qseries, "closed form", &closed));
        }
        let reduced = d.reduce(r)?;
        let qip = QipInstance::new(&reduced).enumerate(cfg.cap)?;
        let qip_val = (qip.optimum, BigUint::from(qip.count()));
        if qip_val != closed {
            return Err(disagree(d, r, "QIP", &qip_val, "closed form", &closed));
        }
        // permutation invariance on a deterministic sample: reversal and
        // all rotations
        let e = d.entries();
        let mut perms: Vec<Vec<u64>> = Vec::new();
        perms.push(e.iter().rev().copied().collect());
        for k in 1..e.len() {
            let mut rot = e[k..].to_vec();
            rot.extend_from_slice(&e[..k]);
            perms.push(rot);
        }
        for p in perms {
            let pd = DimensionVector::new(p)?;
            let perm_val = (codim_closed_form(&pd, r)?, theta_closed_form(&pd, r)?);
            if perm_val != closed {
                return Err(Error::MethodDisagreement(format!(
                    "permutation {pd} of {d} at rank {r}: got (C,theta) = ({}, {}), want ({}, {})",
                    perm_val.0, perm_val.1, closed.0, closed.1
                )));
            }
        }
    }
    Ok(())
}

fn brute_with(
    d: &DimensionVector,
    r: u64,
    cap: u64,
    codim: &dyn Fn(&KostantPartition) -> u64,
) -> Result<(u64, BigUint)> {
    let mut best: Option<u64> = None;
    let mut count: u64 = 0;
    visit_kostant_partitions(d, Some(r), cap, &mut |m| {
        let c = codim(m);
        match best {
            Some(b) if c > b => {}
            Some(b) if c == b => count += 1,
            _ => {
                best = Some(c);
                count = 1;
            }
        }
    })?;
    Ok((best.expect("feasible rank"), BigUint::from(count)))
}

fn disagree(
    d: &DimensionVector,
    r: u64,
    name_a: &str,
    a: &(u64, BigUint),
    name_b: &str,
    b: &(u64, BigUint),
) -> Error {
    Error::MethodDisagreement(format!(
        "{d} at rank {r}: {name_a} gives (C,theta) = ({}, {}), {name_b} gives ({}, {})",
        a.0, a.1, b.0, b.1
    ))
}

/// All dimension vectors with positive entries summing to `total` and at
/// least two entries.
pub fn compositions(total: u64) -> Vec<DimensionVector> {
    let mut out = Vec::new();
    let mut acc: Vec<u64> = Vec::new();
    fn rec(left: u64, acc: &mut Vec<u64>, out: &mut Vec<DimensionVector>) {
        if left == 0 {
            if acc.len() >= 2 {
                out.push(DimensionVector::new(acc.clone()).expect("positive entries"));
            }
            return;
        }
        for v in 1..=left {
            acc.push(v);
            rec(left - v, acc, out);
            acc.pop();
        }
    }
    rec(total, &mut acc, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let cfg = SelfcheckConfig {
            total_bound: 7,
            cap: 1 << 22,
        };
        let summary = run_selfcheck(&cfg).unwrap();
        assert!(summary.dimension_vectors > 50);
        assert!(summary.cases > summary.dimension_vectors);
    }

    #[test]
    fn vacuous_bound_passes() {
        let cfg = SelfcheckConfig {
            total_bound: 1,
            cap: 100,
        };
        let summary = run_selfcheck(&cfg).unwrap();
        assert_eq!(summary.dimension_vectors, 0);
    }

    #[test]
    fn injected_codim_bug_is_caught() {
        // off-by-one in the bilinear form's index pairing: drop the
        // boundary terms with u = b + 1
        let buggy = |m: &KostantPartition| -> u64 {
            let n = m.arrows();
            let mut total = 0u64;
            for a in 0..=n {
                for b in a..=n {
                    let x = m.get(a, b);
                    if x == 0 || b + 1 > n {
                        continue;
                    }
                    for u in 0..=n {
                        for v in u..=n {
                            let y = m.get(u, v);
                            // wrong: strict inequality u < b + 1
                            if y != 0 && a + 1 <= u && u < b + 1 && b + 1 <= v {
                                total += x * y;
                            }
                        }
                    }
                }
            }
            total
        };
        let cfg = SelfcheckConfig {
            total_bound: 6,
            cap: 1 << 20,
        };
        let err = run_selfcheck_with_codim(&cfg, &buggy).unwrap_err();
        match err {
            Error::MethodDisagreement(msg) => {
                assert!(msg.contains("brute force"), "counterexample names the leg: {msg}");
            }
            other => panic!("expected a disagreement, got {other}"),
        }
    }
}
