//! Invariants of the certified order comparators: transfer certificates
//! replay exactly, extremal points form an antichain, the sum-concentrated
//! class never dominates a spread pmf, and the orders respect
//! marginalization and sum-convexity.

mod common;

use common::{random_marginals, random_rational_pmf, rat, rng};
use num::rational::BigRational;
use num::Zero;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use negdep_core::orders::{
    apply_transfers, sigma_class_position, verify_supermodular_witness, Transfer,
};
use negdep_core::{
    cx_leq, enumerate_vertices, exact_sigma_maxent, is_sigma_ctm, s_min, sm_leq,
    sum_cx_leq, wassoc_implies_sm_consistent, wassoc_leq, CtmMethod, Marginals,
    Outcome, OrderRelation, Pmf, Scalar,
};

fn at(i: usize) -> Outcome {
    Outcome::from_index(i)
}

/// Applies up to `count` random elementary lattice transfers to `f`,
/// producing a pmf with the same marginals that dominates `f` in the
/// supermodular order by construction. Returns `None` when no transfer has
/// room (all incomparable pairs lack mass).
fn randomly_dominating(
    f: &Pmf<BigRational>,
    count: usize,
    r: &mut ChaCha12Rng,
) -> Option<Pmf<BigRational>> {
    let d = f.d();
    let mut current = f.clone();
    let mut applied = 0usize;
    for _ in 0..count * 8 {
        if applied == count {
            break;
        }
        let a = at(r.random_range(0..1usize << d));
        let b = at(r.random_range(0..1usize << d));
        if a.comparable(b) {
            continue;
        }
        let avail = current.prob(a).clone().min(current.prob(b).clone());
        if avail.is_zero() {
            continue;
        }
        let frac = rat(r.random_range(1..=3), 4);
        let transfer = Transfer { a, b, weight: avail * frac };
        current = apply_transfers(&current, &[transfer]).unwrap();
        applied += 1;
    }
    (applied > 0 && current != *f).then_some(current)
}

/// A `Less` verdict's transfer list must rewrite the smaller pmf into the
/// larger one exactly, and the opposite comparison must come back `Greater`.
#[test]
fn transfer_certificates_replay_exactly() {
    let mut r = rng(0x02d0_0001);
    let mut replayed = 0usize;
    for d in 2..=5usize {
        for _ in 0..15 {
            let f = random_rational_pmf(d, &mut r);
            let Some(g) = randomly_dominating(&f, 3, &mut r) else {
                continue;
            };
            let verdict = sm_leq(&f, &g).unwrap();
            assert_eq!(
                verdict.relation,
                OrderRelation::Less,
                "constructed dominance not recognized: {f:?} vs {g:?}"
            );
            let transfers = verdict.transfers.expect("Less carries transfers");
            let rebuilt = apply_transfers(&f, &transfers).unwrap();
            assert_eq!(rebuilt, g, "certificate does not rebuild the larger pmf");
            assert_eq!(sm_leq(&g, &f).unwrap().relation, OrderRelation::Greater);
            replayed += 1;
        }
    }
    assert!(replayed >= 30, "too few replayable pairs: {replayed}");
}

/// Distinct extremal points of the adjacent-level polytope are pairwise
/// incomparable, with a verifiable separating function in each direction.
#[test]
fn extremal_points_form_an_antichain() {
    let mut r = rng(0x02d0_0002);
    let cases: &[(usize, usize)] = &[(3, 3), (4, 2), (5, 1)];
    for &(d, rounds) in cases {
        for _ in 0..rounds {
            let p = random_marginals(d, 20, &mut r);
            let poly = enumerate_vertices(&p, true).unwrap();
            let vs = poly.vertices();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let v = sm_leq(&vs[i], &vs[j]).unwrap();
                    assert_eq!(
                        v.relation,
                        OrderRelation::Incomparable,
                        "vertices {i},{j} comparable for p={p:?}"
                    );
                    let nl = v.not_less.expect("two-sided certificate");
                    let ng = v.not_greater.expect("two-sided certificate");
                    assert!(verify_supermodular_witness(&nl, &vs[i], &vs[j]));
                    assert!(verify_supermodular_witness(&ng, &vs[j], &vs[i]));
                }
            }
        }
    }
}

/// A pmf with mass beyond the two adjacent levels is never below any
/// sum-concentrated element — neither below any extremal point nor below
/// any convex combination of them.
#[test]
fn spread_pmfs_never_sit_below_the_concentrated_class() {
    let mut r = rng(0x02d0_0003);
    let mut tested = 0usize;
    for d in 3..=4usize {
        for _ in 0..2 {
            let p = random_marginals(d, 10, &mut r);
            let full = enumerate_vertices(&p, false).unwrap();
            let sigma = enumerate_vertices(&p, true).unwrap();
            for f in full.sample(12, 0xFEED + d as u64) {
                if is_sigma_ctm(&f, CtmMethod::Support).unwrap().holds {
                    continue;
                }
                tested += 1;
                for v in sigma.vertices() {
                    assert_ne!(
                        sm_leq(&f, v).unwrap().relation,
                        OrderRelation::Less,
                        "spread pmf below an extremal point: {f:?} vs {v:?}"
                    );
                }
                let position = sigma_class_position(&f).unwrap();
                assert!(
                    position.above.is_none(),
                    "a concentrated member dominates the spread pmf {f:?}"
                );
            }
        }
    }
    assert!(tested >= 10, "too few spread samples: {tested}");
}

/// Frozen dimension-4 example of a pmf that no element of its
/// adjacent-level class compares with: half the mass on a coordinate
/// triple, half on the complementary singleton. Its sum lives on levels
/// {1, 3} while the class concentrates on level 2, and the transfer
/// program is infeasible in both directions against the entire class.
#[test]
fn exhibits_pmf_incomparable_to_whole_sigma_class() {
    let f = Pmf::from_support(
        4,
        [(at(0b0111), rat(1, 2)), (at(0b1000), rat(1, 2))],
    )
    .unwrap();
    let p = f.marginal_means();
    assert_eq!(p.as_slice(), &[rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]);
    assert!(!is_sigma_ctm(&f, CtmMethod::Support).unwrap().holds);

    let position = sigma_class_position(&f).unwrap();
    assert!(position.is_stalled(), "class-wide comparison found a relative");

    // Cross-check vertex by vertex: every extremal point is incomparable.
    let sigma = enumerate_vertices(&p, true).unwrap();
    assert!(!sigma.vertices().is_empty());
    for v in sigma.vertices() {
        assert_eq!(sm_leq(&f, v).unwrap().relation, OrderRelation::Incomparable);
    }

    // Positive control: for the independent pmf the class-wide search finds
    // a dominated-by member (the max-entropy element sits below it).
    let p3 = Marginals::new(vec![rat(1, 2); 3]).unwrap();
    let product = Pmf::product(&p3).unwrap();
    let position = sigma_class_position(&product).unwrap();
    let below = position.below.expect("a concentrated member below independence");
    let v = sm_leq(&below, &product).unwrap();
    assert!(matches!(v.relation, OrderRelation::Less | OrderRelation::Equal));
    assert!(is_sigma_ctm(&below, CtmMethod::Support).unwrap().holds);
}

/// Supermodular dominance survives marginalization to every coordinate
/// subset.
#[test]
fn ordering_survives_marginalization() {
    let mut r = rng(0x02d0_0004);
    let mut pairs: Vec<(Pmf<BigRational>, Pmf<BigRational>)> = Vec::new();
    for _ in 0..6 {
        let f = random_rational_pmf(4, &mut r);
        if let Some(g) = randomly_dominating(&f, 2, &mut r) {
            pairs.push((f, g));
        }
    }
    let p = Marginals::new(vec![rat(2, 5); 4]).unwrap();
    let h = exact_sigma_maxent(&p).unwrap();
    let product = Pmf::product(&p).unwrap();
    pairs.push((h, product));

    let subsets: &[&[usize]] = &[&[0, 1], &[1, 3], &[0, 2], &[0, 1, 2], &[1, 2, 3]];
    for (f, g) in &pairs {
        assert!(matches!(
            sm_leq(f, g).unwrap().relation,
            OrderRelation::Less | OrderRelation::Equal
        ));
        for keep in subsets {
            let fk = f.marginalize(keep).unwrap();
            let gk = g.marginalize(keep).unwrap();
            let v = sm_leq(&fk, &gk).unwrap();
            assert!(
                matches!(v.relation, OrderRelation::Less | OrderRelation::Equal),
                "marginal pair on {keep:?} lost the ordering: {v:?}"
            );
        }
    }
}

/// Supermodular dominance implies convex dominance of the coordinate sums,
/// and the weak-association order never contradicts the supermodular one.
#[test]
fn sum_convexity_and_weak_association_follow_dominance() {
    let mut r = rng(0x02d0_0005);
    for d in 2..=4usize {
        for _ in 0..8 {
            let f = random_rational_pmf(d, &mut r);
            let Some(g) = randomly_dominating(&f, 2, &mut r) else {
                continue;
            };
            let cx = sum_cx_leq(&f, &g).unwrap();
            assert!(
                matches!(cx.relation, OrderRelation::Less | OrderRelation::Equal),
                "sums not convex-ordered for a transfer pair: {cx:?}"
            );
            assert!(wassoc_implies_sm_consistent(&f, &g).unwrap());
        }
    }

    // The max-entropy concentrated pmf sits below independence in both
    // comparators.
    let p = Marginals::new(vec![rat(2, 5); 3]).unwrap();
    let h = exact_sigma_maxent(&p).unwrap();
    let product = Pmf::product(&p).unwrap();
    assert_eq!(sm_leq(&h, &product).unwrap().relation, OrderRelation::Less);
    assert_eq!(wassoc_leq(&h, &product).unwrap().relation, OrderRelation::Less);
    assert!(wassoc_implies_sm_consistent(&h, &product).unwrap());
}

/// The most concentrated sum law is convex-minimal: it sits below the sum
/// of every pmf with the same mean total, with equality only at itself.
#[test]
fn concentrated_sum_is_convex_minimal() {
    let mut r = rng(0x02d0_0006);
    let mut checked = 0usize;
    // Arbitrary pmfs, compared against the concentrated law for their own
    // mean total (convex comparison only needs matching means).
    for d in 2..=5usize {
        for _ in 0..25 {
            let f = random_rational_pmf(d, &mut r);
            let bound = s_min(f.sum_pmf().mean(), d).unwrap();
            let v = cx_leq(&bound, &f.sum_pmf()).unwrap();
            assert!(
                matches!(v.relation, OrderRelation::Less | OrderRelation::Equal),
                "concentrated sum not minimal for d={d}: {v:?}"
            );
            checked += 1;
        }
    }
    // Members of a fixed marginal class, via polytope sampling.
    for d in 3..=4usize {
        let p = random_marginals(d, 12, &mut r);
        let bound = s_min(p.p_bullet(), d).unwrap();
        let full = enumerate_vertices(&p, false).unwrap();
        for f in full.sample(10, 0xC0DE + d as u64) {
            let v = cx_leq(&bound, &f.sum_pmf()).unwrap();
            assert!(matches!(v.relation, OrderRelation::Less | OrderRelation::Equal));
            checked += 1;
        }
    }
    assert!(checked >= 100);

    // Spot checks: strictly below an independent sum; equal to itself.
    let p = Marginals::new(vec![rat(1, 2); 3]).unwrap();
    let product = Pmf::product(&p).unwrap();
    let bound = s_min(rat(3, 2), 3).unwrap();
    assert_eq!(
        cx_leq(&bound, &product.sum_pmf()).unwrap().relation,
        OrderRelation::Less
    );
    assert_eq!(cx_leq(&bound, &bound).unwrap().relation, OrderRelation::Equal);
}
