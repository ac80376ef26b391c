//! Acceptance suite: every criterion is one test that prints a PASS line
//! when it holds exactly (all values are integers or exact rationals; the
//! tolerance everywhere is equality).
//!
//! Run with: cargo test -p quiver-codim --test acceptance -- --nocapture

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quiver_codim::dim::dim;
use quiver_codim::qip::delta_by_fractional_part;
use quiver_codim::selfcheck::compositions;
use quiver_codim::*;

const CAP: u64 = 1 << 26;
const BASIS_CAP: u64 = 20_000;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// (C, theta) by each of the four methods.
fn all_methods(d: &DimensionVector, r: u64) -> [(u64, BigUint); 4] {
    let brute = top_components_bruteforce(d, r, CAP).unwrap();
    let closed = (
        codim_closed_form(d, r).unwrap(),
        theta_closed_form(d, r).unwrap(),
    );
    let series = q_series_closed(d, r, closed.0 as usize + 2).unwrap();
    let (qc, qtheta) = extract_c_theta(&series).unwrap();
    let qip = QipInstance::new(&d.reduce(r).unwrap()).enumerate(CAP).unwrap();
    [
        (brute.c, brute.theta),
        (qc, qtheta.to_biguint().expect("nonnegative lowest coefficient")),
        (qip.optimum, BigUint::from(qip.count())),
        closed,
    ]
}

#[test]
fn criterion_1_component_examples_by_all_methods() {
    let cases: [(&[u64], u64, u64); 5] = [
        (&[2, 2, 2], 3, 1),
        (&[2, 3, 2], 4, 2),
        (&[2, 4, 2], 4, 1),
        (&[3, 3, 3], 7, 2),
        (&[5, 5, 6, 6, 6, 6], 19, 5),
    ];
    for (entries, want_c, want_theta) in cases {
        let d = dim(entries);
        for (method, got) in all_methods(&d, 0).into_iter().enumerate() {
            assert_eq!(
                got,
                (want_c, big(want_theta)),
                "{d} via method #{method}"
            );
        }
    }
    // full component list for (2,2,2): codimensions {3,4,4}
    let comps = enumerate_components(&dim(&[2, 2, 2]), 0, CAP).unwrap();
    let mut codims: Vec<u64> = comps.iter().map(|c| c.codim).collect();
    codims.sort_unstable();
    assert_eq!(codims, vec![3, 4, 4]);
    println!(
        "[acceptance] criterion 1 (component examples, 4 methods each): PASS"
    );
}

#[test]
fn criterion_2_q_series_coefficients() {
    let q = q_series_bruteforce(&dim(&[3, 3, 3]), 0, 11, CAP).unwrap();
    let want: Vec<BigInt> = [0, 0, 0, 0, 0, 0, 0, 2, 8, 27, 67, 151]
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    assert_eq!(q.coeffs(), &want[..], "brute-force series for (3,3,3)");
    assert_eq!(
        q_series_closed(&dim(&[3, 3, 3]), 0, 11).unwrap().coeffs(),
        &want[..],
        "closed series for (3,3,3)"
    );

    // partition count for the 12-entry vector is ~1.3e12: closed form only
    let d = dim(&[4, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6]);
    assert!(count_kostant_partitions(&d, Some(0)) > BigUint::from(u64::from(u32::MAX)));
    let q = q_series_closed(&d, 0, 15).unwrap();
    let want: Vec<BigInt> = [28, 508, 5129, 37424].iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(&q.coeffs()[12..], &want[..]);
    assert!(q.coeffs()[..12].iter().all(|c| c.is_zero()));
    println!("[acceptance] criterion 2 (q-series coefficients): PASS");
}

#[test]
fn criterion_3_qip_examples() {
    let sol = QipInstance::new(&dim(&[8, 8, 11, 11, 11, 13, 13, 13, 15]))
        .enumerate(CAP)
        .unwrap();
    assert_eq!(sol.optimum, 55);
    let want: Vec<Vec<u64>> = vec![
        vec![4, 1, 1, 2, 0, 0, 0, 0],
        vec![4, 1, 2, 1, 0, 0, 0, 0],
        vec![4, 2, 1, 1, 0, 0, 0, 0],
        vec![5, 1, 1, 1, 0, 0, 0, 0],
    ];
    assert_eq!(sol.minimizers, want, "exactly the four listed minimizers");

    let sol = QipInstance::new(&dim(&[2, 2, 3])).enumerate(CAP).unwrap();
    assert_eq!(sol.optimum, 4);
    assert_eq!(sol.minimizers, vec![vec![1, 1], vec![2, 0]]);
    println!("[acceptance] criterion 3 (QIP examples): PASS");
}

#[test]
fn criterion_4_closest_point_walkthrough() {
    let d = dim(&[7, 7, 8, 9, 12, 13]);
    let res = closest_simplex_points(&d).unwrap();
    assert_eq!(res.m_relevant, 3);
    assert_eq!(res.rounded, vec![3, 2, 1]);
    assert_eq!(res.delta, 1);
    assert_eq!(res.v_hats.len(), 3, "k = 3");
    assert_eq!(
        res.v_hats,
        vec![vec![4, 2, 1], vec![3, 3, 1], vec![3, 2, 2]]
    );
    assert_eq!(res.d_hat, 34);
    assert_eq!(codim_closed_form(&d, 0).unwrap(), 39);
    assert_eq!(theta_closed_form(&d, 0).unwrap(), big(3));
    println!("[acceptance] criterion 4 (closest-point walkthrough): PASS");
}

#[test]
fn criterion_5_graded_kernel() {
    use quiver_codim::avoiding::{kernel_rank_at_degree, lowest_kernel};

    let d = dim(&[2, 2, 3]);
    assert_eq!(kernel_rank_at_degree(&d, 0, 3, BASIS_CAP, false).unwrap().kernel_rank, 0);
    assert_eq!(lowest_kernel(&d, 0, 8, BASIS_CAP).unwrap(), (4, 2));

    // agreement with the closed form for every d with positive entries,
    // total at most 8, at rank 0 (the kernel route needs min(d) > r)
    for total in 2..=8u64 {
        for d in compositions(total) {
            let c = codim_closed_form(&d, 0).unwrap();
            let theta = theta_closed_form(&d, 0).unwrap();
            let (kc, ktheta) = lowest_kernel(&d, 0, c as usize + 1, BASIS_CAP).unwrap();
            assert_eq!((kc, big(ktheta)), (c, theta.clone()), "{d}");
        }
    }
    println!("[acceptance] criterion 5 (graded kernel vs closed form, sum <= 8): PASS");
}

#[test]
fn criterion_6_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = 0u64;
    for total in 2..=12u64 {
        for d in compositions(total) {
            let n = d.arrows();
            let min_d = d.min_entry();
            let t = 8usize;

            // (b) P_d = sum_r Q^r_d at T=8
            let mut sum = QSeries::zero(t);
            let mut brute_series = Vec::new();
            for r in 0..=min_d {
                let q = q_series_bruteforce(&d, r, t, CAP).unwrap();
                sum = sum.add(&q);
                brute_series.push(q);
            }
            assert_eq!(
                sum,
                pochhammer_multi(d.entries().iter().copied(), t),
                "PdPm identity for {d}"
            );

            for r in 0..=min_d {
                cases += 1;
                // (a) four-method agreement
                let vals = all_methods(&d, r);
                assert!(
                    vals.iter().all(|v| *v == vals[0]),
                    "method disagreement for {d} r={r}: {vals:?}"
                );
                let (c, _) = vals[0].clone();

                // closed and brute-force series agree outright
                assert_eq!(
                    q_series_closed(&d, r, t).unwrap(),
                    brute_series[r as usize],
                    "series equality for {d} r={r}"
                );

                // (c) shift identity: Q^{s-r}_{d-r} = prod (1-q^i) Q^s_d
                for s in r..=min_d {
                    let lhs = q_series_bruteforce(&d.reduce(r).unwrap(), s - r, t, CAP).unwrap();
                    let rhs = pochhammer_product(s - r + 1, s, t).mul(&brute_series[s as usize]);
                    assert_eq!(lhs, rhs, "shift identity for {d} r={r} s={s}");
                }

                // (d) permutation invariance of (C, theta)
                let perms: Vec<Vec<u64>> = if n <= 4 {
                    permutations(d.entries())
                } else {
                    (0..50)
                        .map(|_| {
                            let mut p = d.entries().to_vec();
                            p.shuffle(&mut rng);
                            p
                        })
                        .collect()
                };
                for p in perms {
                    let pd = DimensionVector::new(p).unwrap();
                    let pc = codim_closed_form(&pd, r).unwrap();
                    let pth = theta_closed_form(&pd, r).unwrap();
                    assert_eq!((pc, pth), vals[3].clone(), "permutation {pd} of {d} r={r}");
                }

                // (e) rank reduction: brute force on both sides
                let reduced = d.reduce(r).unwrap();
                let a = top_components_bruteforce(&d, r, CAP).unwrap();
                let b = top_components_bruteforce(&reduced, 0, CAP).unwrap();
                assert_eq!((a.c, a.theta), (b.c, b.theta), "reduction for {d} r={r}");

                // (f) fiber codimension offset
                let e = d.entries();
                assert_eq!(
                    quiver_codim::dln::fiber_codim(&d, r).unwrap() - c,
                    r * (e[0] + e[n] - r),
                    "fiber offset for {d} r={r}"
                );
            }

            // (g) representative soundness over every orbit of d
            visit_kostant_partitions(&d, None, CAP, &mut |m| {
                let t = lace_representative(m);
                assert_eq!(
                    t.rank_pattern(),
                    m.to_rank_pattern(),
                    "representative for {m}"
                );
            })
            .unwrap();
        }
    }
    // the delta case-split used by the closed form, over a grid
    for m in 1i64..=20 {
        for s in 0i64..=200 {
            let direct = s - m * ((2 * s + m).div_euclid(2 * m));
            assert_eq!(delta_by_fractional_part(s, m), direct);
        }
    }
    println!("[acceptance] criterion 6 (property suite, sum <= 12, {cases} (d, r) cases): PASS");
}

#[test]
fn criterion_7_rlct() {
    use quiver_codim::dln::rlct;

    let half = |n: u64| BigRational::new(BigInt::from(n), BigInt::from(2));
    assert_eq!(rlct(&dim(&[2, 2, 2]), 0).unwrap(), half(3));
    assert_eq!(rlct(&dim(&[2, 2, 3]), 0).unwrap(), half(4));
    assert_eq!(rlct(&dim(&[7, 7, 8, 9, 12, 13]), 0).unwrap(), half(39));

    for total in 2..=12u64 {
        for d in compositions(total) {
            let e = d.entries();
            for r in 0..=d.min_entry() {
                let want = half(codim_closed_form(&d, r).unwrap() + r * (e[0] + e[e.len() - 1] - r));
                assert_eq!(rlct(&d, r).unwrap(), want, "{d} r={r}");
            }
        }
    }
    println!("[acceptance] criterion 7 (rlct = fiber codim / 2): PASS");
}

/// All distinct permutations of a small slice.
fn permutations(entries: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut v = entries.to_vec();
    v.sort_unstable();
    loop {
        out.push(v.clone());
        // next_permutation
        let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
            break;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
    }
    out
}
