//! Shared oracles and generators for the integration suites.
//!
//! Oracles recompute quantities along routes independent from the library
//! code under test: direct summation instead of the pmf accessors, the
//! two-draws definition of countermonotonicity instead of the cdf
//! characterization, support-uniqueness linear programs instead of the
//! enumeration's own rank bookkeeping, and first-order ascent instead of
//! Newton steps. A bug in the implementation then cannot hide inside its
//! own checker.
#![allow(dead_code)]

use num::rational::BigRational;
use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use negdep_core::lp::{LpBuilder, LpOutcome};
use negdep_core::properties::BivariateSums;
use negdep_core::{FrechetPolytope, Marginals, Outcome, Pmf, Scalar};

/// Deterministic generator for a test; every suite derives all randomness
/// from explicit seeds so failures replay exactly.
pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn binom(d: usize, k: usize) -> BigInt {
    if k > d {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(d - k) {
        acc = acc * BigInt::from(d - i) / BigInt::from(i + 1);
    }
    acc
}

/// Marginal means recomputed by summing the pmf outcome by outcome.
pub fn brute_marginals<T: Scalar>(f: &Pmf<T>) -> Vec<T> {
    let d = f.d();
    let mut out = vec![T::zero(); d];
    for o in Outcome::all(d) {
        for (j, slot) in out.iter_mut().enumerate() {
            if o.bit(j) {
                *slot = slot.clone() + f.prob(o).clone();
            }
        }
    }
    out
}

/// `E[X_{j1} X_{j2}]` recomputed by direct summation.
pub fn brute_pair_moment<T: Scalar>(f: &Pmf<T>, j1: usize, j2: usize) -> T {
    let mut acc = T::zero();
    for o in Outcome::all(f.d()) {
        if o.bit(j1) && o.bit(j2) {
            acc = acc + f.prob(o).clone();
        }
    }
    acc
}

/// `E[(S − t)⁺]` recomputed from a raw sum-distribution vector.
pub fn brute_stop_loss<T: Scalar>(values: &[T], t: usize) -> T {
    let mut acc = T::zero();
    for (y, v) in values.iter().enumerate() {
        if y > t {
            acc = acc + T::from_int((y - t) as i64) * v.clone();
        }
    }
    acc
}

/// Countermonotonicity decided straight from its definition: no two support
/// atoms may move in the same strict direction in both coordinates.
pub fn ctm_pair_by_definition<T: Scalar>(joint: &BivariateSums<T>) -> bool {
    let mut atoms: Vec<(i64, i64)> = Vec::new();
    for x in 0..=joint.a_max() {
        for y in 0..=joint.b_max() {
            let q = joint.prob(x, y);
            let positive = if T::EXACT {
                *q > T::zero()
            } else {
                q.to_f64() > 1e-13
            };
            if positive {
                atoms.push((x as i64, y as i64));
            }
        }
    }
    atoms.iter().all(|&(x1, y1)| {
        atoms
            .iter()
            .all(|&(x2, y2)| (x1 - x2) * (y1 - y2) <= 0)
    })
}

/// Covariance of a pair of upper-set indicators over disjoint blocks,
/// recomputed by direct summation over the full cube. The upper sets are
/// given as explicit block-local outcome lists (the witness payload format).
pub fn indicator_pair_covariance<T: Scalar>(
    f: &Pmf<T>,
    block_a: &[usize],
    block_b: &[usize],
    upper_a: &[Outcome],
    upper_b: &[Outcome],
) -> T {
    let mut e_ab = T::zero();
    let mut e_a = T::zero();
    let mut e_b = T::zero();
    for o in Outcome::all(f.d()) {
        let in_a = upper_a.contains(&o.project(block_a));
        let in_b = upper_b.contains(&o.project(block_b));
        let q = f.prob(o).clone();
        if in_a {
            e_a = e_a + q.clone();
            if in_b {
                e_ab = e_ab + q.clone();
            }
        }
        if in_b {
            e_b = e_b + q;
        }
    }
    e_ab - e_a * e_b
}

/// Checks that a block-local outcome set is upward closed.
pub fn is_upper_set(members: &[Outcome], k: usize) -> bool {
    Outcome::all(k).all(|a| {
        !members.contains(&a)
            || Outcome::all(k).all(|b| !a.le(b) || members.contains(&b))
    })
}

/// Random pmf over a random support: every outcome is kept with probability
/// 1/2 (at least one kept), weights are integers in `1..=1000` normalized
/// exactly.
pub fn random_rational_pmf(d: usize, rng: &mut ChaCha12Rng) -> Pmf<BigRational> {
    loop {
        let mut entries: Vec<(Outcome, BigInt)> = Vec::new();
        for o in Outcome::all(d) {
            if rng.random_bool(0.5) {
                entries.push((o, BigInt::from(rng.random_range(1..=1000u32))));
            }
        }
        if entries.is_empty() {
            continue;
        }
        return normalize_entries(d, entries);
    }
}

/// Random pmf supported inside the given levels only.
pub fn random_level_pmf(
    d: usize,
    levels: &[usize],
    rng: &mut ChaCha12Rng,
) -> Pmf<BigRational> {
    let pool: Vec<Outcome> = Outcome::all(d)
        .filter(|o| levels.contains(&o.level()))
        .collect();
    assert!(!pool.is_empty(), "no outcomes on levels {levels:?}");
    loop {
        let mut entries: Vec<(Outcome, BigInt)> = Vec::new();
        for &o in &pool {
            if rng.random_bool(0.7) {
                entries.push((o, BigInt::from(rng.random_range(1..=1000u32))));
            }
        }
        if entries.is_empty() {
            continue;
        }
        return normalize_entries(d, entries);
    }
}

fn normalize_entries(d: usize, entries: Vec<(Outcome, BigInt)>) -> Pmf<BigRational> {
    let total: BigInt = entries.iter().map(|(_, w)| w.clone()).sum();
    let probs = entries
        .into_iter()
        .map(|(o, w)| (o, BigRational::new(w, total.clone())))
        .collect::<Vec<_>>();
    Pmf::from_support(d, probs).expect("normalized nonnegative weights form a pmf")
}

/// Random strictly interior rational marginals with denominator `den`.
pub fn random_marginals(
    d: usize,
    den: i64,
    rng: &mut ChaCha12Rng,
) -> Marginals<BigRational> {
    let p = (0..d)
        .map(|_| rat(rng.random_range(1..den), den))
        .collect::<Vec<_>>();
    Marginals::new(p).expect("interior rationals are valid marginals")
}

/// Random exchangeable pmf with every marginal mean equal to `p`: a random
/// mixture of the two-point sum laws with mean `d·p`, spread uniformly
/// within each level. Exact by construction.
pub fn random_exchangeable_in_class(
    d: usize,
    p: &BigRational,
    rng: &mut ChaCha12Rng,
) -> Pmf<BigRational> {
    let dp = BigRational::from_int(d as i64) * p.clone();
    let mut sum_laws: Vec<Vec<BigRational>> = Vec::new();
    for a in 0..=d {
        let fa = BigRational::from_int(a as i64);
        if fa == dp {
            let mut s = vec![BigRational::zero(); d + 1];
            s[a] = BigRational::one();
            sum_laws.push(s);
        }
        for b in a + 1..=d {
            let fb = BigRational::from_int(b as i64);
            if fa <= dp && dp <= fb {
                let span = fb.clone() - fa.clone();
                let mut s = vec![BigRational::zero(); d + 1];
                s[a] = (fb.clone() - dp.clone()) / span.clone();
                s[b] = (dp.clone() - fa.clone()) / span;
                sum_laws.push(s);
            }
        }
    }
    assert!(!sum_laws.is_empty(), "mean {dp} out of range for d = {d}");
    let weights: Vec<BigInt> = (0..sum_laws.len())
        .map(|_| BigInt::from(rng.random_range(1..=1000u32)))
        .collect();
    let total: BigInt = weights.iter().cloned().sum();
    let mut s = vec![BigRational::zero(); d + 1];
    for (law, w) in sum_laws.iter().zip(&weights) {
        let coeff = BigRational::new(w.clone(), total.clone());
        for (slot, v) in s.iter_mut().zip(law) {
            *slot = slot.clone() + coeff.clone() * v.clone();
        }
    }
    let probs: Vec<(Outcome, BigRational)> = Outcome::all(d)
        .map(|o| {
            let k = o.level();
            (
                o,
                s[k].clone() / BigRational::from(binom(d, k)),
            )
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Pmf::from_support(d, probs).expect("level-uniform spread of a sum law is a pmf")
}

/// Euclidean projection onto the probability simplex (sort-based).
pub fn project_to_simplex(y: &[f64]) -> Vec<f64> {
    let mut u: Vec<f64> = y.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).expect("no NaN in simplex projection"));
    let mut css = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        css += ui;
        let t = (css - 1.0) / (i as f64 + 1.0);
        if ui - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|&yi| (yi - theta).max(0.0)).collect()
}

/// Maximum entropy over convex combinations of the polytope's vertices by
/// projected gradient ascent with backtracking line search — a first-order
/// benchmark entirely independent of the Newton solver.
pub fn entropy_by_projected_gradient(poly: &FrechetPolytope) -> f64 {
    let n = poly.num_vertices();
    let verts: Vec<Vec<f64>> = poly
        .vertices()
        .iter()
        .map(|v| v.probs().iter().map(Scalar::to_f64).collect())
        .collect();
    let size = verts[0].len();
    let entropy_of = |lambda: &[f64]| -> f64 {
        let mut h = 0.0;
        for o in 0..size {
            let fo: f64 = (0..n).map(|k| lambda[k] * verts[k][o]).sum();
            if fo > 0.0 {
                h -= fo * fo.ln();
            }
        }
        h
    };
    let mut lambda = vec![1.0 / n as f64; n];
    let mut current = entropy_of(&lambda);
    for _ in 0..100_000 {
        let f: Vec<f64> = (0..size)
            .map(|o| (0..n).map(|k| lambda[k] * verts[k][o]).sum())
            .collect();
        let grad: Vec<f64> = (0..n)
            .map(|k| {
                (0..size)
                    .map(|o| {
                        if verts[k][o] == 0.0 {
                            0.0
                        } else {
                            verts[k][o] * (-f[o].max(1e-300).ln() - 1.0)
                        }
                    })
                    .sum()
            })
            .collect();
        let mut step = 1.0;
        let mut improved = false;
        while step > 1e-18 {
            let trial: Vec<f64> = (0..n).map(|k| lambda[k] + step * grad[k]).collect();
            let cand = project_to_simplex(&trial);
            let h = entropy_of(&cand);
            if h > current {
                lambda = cand;
                current = h;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    current
}

/// Extremality oracle: a feasible point of the marginal polytope is extremal
/// iff it is the *unique* feasible point with its support. Fixing the
/// support, each coordinate's maximum and minimum over the polytope must
/// both pin to the point's own value (two exact LPs per support atom).
pub fn extremal_by_support_uniqueness(
    poly: &FrechetPolytope,
    v: &Pmf<BigRational>,
) -> bool {
    let support: Vec<Outcome> = v.support().map(|(o, _)| o).collect();
    let n = support.len();
    let d = poly.d();
    for target in 0..n {
        for maximize in [false, true] {
            let mut lp = LpBuilder::new(n);
            let mut c = vec![BigRational::zero(); n];
            c[target] = if maximize {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            lp.set_objective(c);
            lp.add_eq(vec![BigRational::one(); n], BigRational::one());
            for j in 0..d {
                let coeffs: Vec<BigRational> = support
                    .iter()
                    .map(|o| {
                        if o.bit(j) {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect();
                lp.add_eq(coeffs, poly.marginals().get(j).clone());
            }
            match lp.solve().expect("support LP is well formed") {
                LpOutcome::Optimal { x, .. } => {
                    if x[target] != *v.prob(support[target]) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// Entry-wise distance between two float pmfs.
pub fn max_abs_diff(a: &Pmf<f64>, b: &Pmf<f64>) -> f64 {
    a.probs()
        .iter()
        .zip(b.probs())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
