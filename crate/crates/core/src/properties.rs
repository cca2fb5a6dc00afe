//! Distributional negative-dependence properties of multivariate Bernoulli
//! vectors: pairwise negative correlation, negative lattice condition,
//! joint mix, sum-countermonotonicity, pairwise countermonotonicity,
//! negative association, and negative supermodular dependence.
//!
//! Float inputs are checked against [`PROPERTY_TOL`]; exact-rational inputs
//! are checked exactly (the tolerance is only ever *added* slack, so a pmf
//! that passes exactly also passes in float mode).

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::pmf::{s_min, Pmf};
use crate::scalar::Scalar;

/// Absolute tolerance for float-mode property checks.
pub const PROPERTY_TOL: f64 = 1e-12;

/// Default dimension bound for checks that enumerate upper sets of
/// sub-hypercubes (negative association and the weak-association order).
/// The number of upper sets grows doubly exponentially (3, 6, 20, 168,
/// 7581, 7828354 for k = 1..6), so parts of size larger than 5 are
/// impractical and the scan refuses d > 6.
pub const NA_DIMENSION_BOUND: usize = 6;

// ---------------------------------------------------------------------------
// Pairwise negative correlation
// ---------------------------------------------------------------------------

/// One coordinate pair together with its covariance.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCovariance<T> {
    pub j1: usize,
    pub j2: usize,
    pub covariance: T,
}

/// Verdict of the pairwise-negative-correlation check.
#[derive(Clone, Debug, PartialEq)]
pub struct PncReport<T> {
    pub holds: bool,
    /// Covariances of all unordered coordinate pairs, in lexicographic order.
    pub pairs: Vec<PairCovariance<T>>,
    /// First pair with strictly positive covariance, if any.
    pub witness: Option<PairCovariance<T>>,
}

/// Checks whether every pairwise covariance is nonpositive.
pub fn is_pnc<T: Scalar>(f: &Pmf<T>) -> PncReport<T> {
    let d = f.d();
    let zero = T::zero();
    let mut pairs = Vec::new();
    let mut witness = None;
    for j1 in 0..d {
        for j2 in j1 + 1..d {
            let covariance = f.covariance(j1, j2);
            let entry = PairCovariance { j1, j2, covariance };
            if witness.is_none() && !entry.covariance.le_tol(&zero, PROPERTY_TOL) {
                witness = Some(entry.clone());
            }
            pairs.push(entry);
        }
    }
    PncReport { holds: witness.is_none(), pairs, witness }
}

// ---------------------------------------------------------------------------
// Negative lattice condition
// ---------------------------------------------------------------------------

/// An incomparable outcome pair violating the negative lattice condition:
/// `f(a) * f(b) < f(a ∧ b) * f(a ∨ b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NlcViolation<T> {
    pub a: Outcome,
    pub b: Outcome,
    /// `f(a) * f(b)`.
    pub separate: T,
    /// `f(a ∧ b) * f(a ∨ b)`.
    pub lattice: T,
}

/// Verdict of the negative-lattice-condition check.
#[derive(Clone, Debug, PartialEq)]
pub struct NlcReport<T> {
    pub holds: bool,
    /// Number of incomparable pairs inspected.
    pub checked: usize,
    pub witness: Option<NlcViolation<T>>,
}

/// Checks the negative lattice condition: for every incomparable pair of
/// outcomes `a, b`, `f(a) * f(b) >= f(a ∧ b) * f(a ∨ b)`. Comparable pairs
/// hold trivially (the two products coincide) and are skipped.
pub fn is_nlc<T: Scalar>(f: &Pmf<T>) -> NlcReport<T> {
    let n = 1usize << f.d();
    let mut checked = 0;
    for ia in 0..n {
        let a = Outcome::from_index(ia);
        for ib in ia + 1..n {
            let b = Outcome::from_index(ib);
            if a.comparable(b) {
                continue;
            }
            checked += 1;
            let separate = f.prob(a).clone() * f.prob(b).clone();
            let lattice = f.prob(a.meet(b)).clone() * f.prob(a.join(b)).clone();
            if !lattice.le_tol(&separate, PROPERTY_TOL) {
                return NlcReport {
                    holds: false,
                    checked,
                    witness: Some(NlcViolation { a, b, separate, lattice }),
                };
            }
        }
    }
    NlcReport { holds: true, checked, witness: None }
}

// ---------------------------------------------------------------------------
// Joint mix
// ---------------------------------------------------------------------------

/// Verdict of the joint-mix check (the coordinate sum is degenerate).
#[derive(Clone, Debug, PartialEq)]
pub struct JointMixReport {
    pub holds: bool,
    /// The constant value of the sum when degenerate.
    pub level: Option<usize>,
}

/// Checks whether the coordinate sum is almost surely constant.
pub fn is_joint_mix<T: Scalar>(f: &Pmf<T>) -> JointMixReport {
    let level = f.sum_pmf().point_mass_at(PROPERTY_TOL);
    JointMixReport { holds: level.is_some(), level }
}

// ---------------------------------------------------------------------------
// Bivariate integer sums and countermonotonicity of a pair
// ---------------------------------------------------------------------------

/// Joint distribution of a pair of integer-valued sums `(X, Y)` with
/// `X` ranging over `0..=a_max` and `Y` over `0..=b_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSums<T> {
    a_max: usize,
    b_max: usize,
    /// Row-major: `probs[x * (b_max + 1) + y] = P(X = x, Y = y)`.
    probs: Vec<T>,
}

impl<T: Scalar> BivariateSums<T> {
    pub fn new(a_max: usize, b_max: usize, probs: Vec<T>) -> Result<Self> {
        let expected = (a_max + 1) * (b_max + 1);
        if probs.len() != expected {
            return Err(Error::BadLength { got: probs.len(), expected });
        }
        let mut total = T::zero();
        for (i, q) in probs.iter().enumerate() {
            if !q.nonneg_tol(crate::pmf::FLOAT_SUM_TOL) {
                return Err(Error::NegativeProbability {
                    outcome: format!("({}, {})", i / (b_max + 1), i % (b_max + 1)),
                    value: q.to_string(),
                });
            }
            total = total + q.clone();
        }
        if !total.eq_tol(&T::one(), crate::pmf::FLOAT_SUM_TOL) {
            return Err(Error::BadNormalization { got: total.to_string() });
        }
        Ok(Self { a_max, b_max, probs })
    }

    pub fn a_max(&self) -> usize {
        self.a_max
    }

    pub fn b_max(&self) -> usize {
        self.b_max
    }

    pub fn prob(&self, x: usize, y: usize) -> &T {
        &self.probs[x * (self.b_max + 1) + y]
    }

    /// Cumulative distribution `P(X <= x, Y <= y)`.
    pub fn joint_cdf(&self, x: usize, y: usize) -> T {
        let mut acc = T::zero();
        for xi in 0..=x.min(self.a_max) {
            for yi in 0..=y.min(self.b_max) {
                acc = acc + self.prob(xi, yi).clone();
            }
        }
        acc
    }

    /// Marginal distribution of `X`.
    pub fn x_marginal(&self) -> Vec<T> {
        (0..=self.a_max)
            .map(|x| {
                let mut acc = T::zero();
                for y in 0..=self.b_max {
                    acc = acc + self.prob(x, y).clone();
                }
                acc
            })
            .collect()
    }

    /// Marginal distribution of `Y`.
    pub fn y_marginal(&self) -> Vec<T> {
        (0..=self.b_max)
            .map(|y| {
                let mut acc = T::zero();
                for x in 0..=self.a_max {
                    acc = acc + self.prob(x, y).clone();
                }
                acc
            })
            .collect()
    }
}

/// Builds the joint distribution of the block sums `(S_A, S_B)` where
/// `S_A` sums the coordinates in `block_a` and `S_B` those in `block_b`.
/// The blocks must be disjoint, nonempty, and within range.
pub fn split_sums<T: Scalar>(
    f: &Pmf<T>,
    block_a: &[usize],
    block_b: &[usize],
) -> Result<BivariateSums<T>> {
    let d = f.d();
    if block_a.is_empty() || block_b.is_empty() {
        return Err(Error::EmptySubset { context: "sum split" });
    }
    let mut seen = vec![false; d];
    for &j in block_a.iter().chain(block_b) {
        if j >= d {
            return Err(Error::CoordinateOutOfRange { index: j, d });
        }
        if seen[j] {
            return Err(Error::BadPartition {
                reason: format!("coordinate {j} appears in both blocks"),
            });
        }
        seen[j] = true;
    }
    let (a_max, b_max) = (block_a.len(), block_b.len());
    let mut probs = vec![T::zero(); (a_max + 1) * (b_max + 1)];
    for (o, q) in f.support() {
        let x = block_a.iter().filter(|&&j| o.bit(j)).count();
        let y = block_b.iter().filter(|&&j| o.bit(j)).count();
        probs[x * (b_max + 1) + y] = probs[x * (b_max + 1) + y].clone() + q.clone();
    }
    BivariateSums::new(a_max, b_max, probs)
}

/// A grid point where the joint cdf departs from the countermonotonic
/// (lower Fréchet) bound `max(F_X(x) + F_Y(y) - 1, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CtmPairViolation<T> {
    pub x: usize,
    pub y: usize,
    pub joint_cdf: T,
    pub frechet_bound: T,
}

/// Verdict of the pairwise-countermonotonicity check for a bivariate pair.
#[derive(Clone, Debug, PartialEq)]
pub struct CtmPairReport<T> {
    pub holds: bool,
    pub witness: Option<CtmPairViolation<T>>,
}

/// Checks whether `(X, Y)` is countermonotonic, i.e. its joint cdf equals
/// the lower Fréchet bound `max(F_X(x) + F_Y(y) - 1, 0)` at every grid point.
pub fn is_countermonotonic_pair<T: Scalar>(joint: &BivariateSums<T>) -> CtmPairReport<T> {
    let fx = joint.x_marginal();
    let fy = joint.y_marginal();
    // Prefix sums for the marginal cdfs.
    let cdf = |m: &[T]| {
        let mut acc = T::zero();
        m.iter()
            .map(|q| {
                acc = acc.clone() + q.clone();
                acc.clone()
            })
            .collect::<Vec<T>>()
    };
    let fx = cdf(&fx);
    let fy = cdf(&fy);
    let zero = T::zero();
    let one = T::one();
    for x in 0..=joint.a_max() {
        for y in 0..=joint.b_max() {
            let mut bound = fx[x].clone() + fy[y].clone() - one.clone();
            if bound < zero {
                bound = zero.clone();
            }
            let h = joint.joint_cdf(x, y);
            if !h.eq_tol(&bound, PROPERTY_TOL) {
                return CtmPairReport {
                    holds: false,
                    witness: Some(CtmPairViolation {
                        x,
                        y,
                        joint_cdf: h,
                        frechet_bound: bound,
                    }),
                };
            }
        }
    }
    CtmPairReport { holds: true, witness: None }
}

/// Verdict of the all-pairs countermonotonicity check: every unordered
/// coordinate pair `(I_j1, I_j2)` is countermonotonic.
#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseCtmReport<T> {
    pub holds: bool,
    /// First coordinate pair that is not countermonotonic, with the
    /// offending grid point.
    pub witness: Option<(usize, usize, CtmPairViolation<T>)>,
}

/// Checks whether every pair of coordinates is countermonotonic. For `d >= 3`
/// this forces `p• <= 1` or `p• >= d - 1`.
pub fn is_pairwise_ctm<T: Scalar>(f: &Pmf<T>) -> Result<PairwiseCtmReport<T>> {
    let d = f.d();
    for j1 in 0..d {
        for j2 in j1 + 1..d {
            let joint = split_sums(f, &[j1], &[j2])?;
            let report = is_countermonotonic_pair(&joint);
            if let Some(v) = report.witness {
                return Ok(PairwiseCtmReport { holds: false, witness: Some((j1, j2, v)) });
            }
        }
    }
    Ok(PairwiseCtmReport { holds: true, witness: None })
}

// ---------------------------------------------------------------------------
// Sum-countermonotonicity
// ---------------------------------------------------------------------------

/// Which characterization of sum-countermonotonicity to evaluate. All three
/// agree on every pmf; exposing them separately lets tests confirm that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtmMethod {
    /// The coordinate sum concentrates on the two adjacent levels
    /// `⌊p•⌋` and `⌊p•⌋ + 1` with the unique masses forced by the mean.
    Support,
    /// Every split of the coordinates into two nonempty blocks yields a
    /// countermonotonic pair of block sums.
    Definition,
    /// Only the `d` single-coordinate-versus-rest splits are tested.
    SingleVsRest,
}

/// Why a pmf fails sum-countermonotonicity.
#[derive(Clone, Debug, PartialEq)]
pub enum SigmaCtmViolation<T> {
    /// The sum distribution spreads beyond the two adjacent levels around
    /// the mean. `observed` lists the levels carrying mass; `expected` the
    /// levels allowed by the mean.
    SumSpread { observed: Vec<usize>, expected: Vec<usize> },
    /// A block split whose pair of block sums is not countermonotonic.
    Split { block_a: Vec<usize>, block_b: Vec<usize>, violation: CtmPairViolation<T> },
}

/// Verdict of the sum-countermonotonicity check.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaCtmReport<T> {
    pub holds: bool,
    pub method: CtmMethod,
    pub witness: Option<SigmaCtmViolation<T>>,
}

/// Checks whether the coordinate sum is as concentrated as the marginal
/// means allow (equivalently: the pmf is a minimal element of the convex
/// order on sums within its Fréchet class).
pub fn is_sigma_ctm<T: Scalar>(f: &Pmf<T>, method: CtmMethod) -> Result<SigmaCtmReport<T>> {
    match method {
        CtmMethod::Support => sigma_ctm_by_support(f),
        CtmMethod::Definition => sigma_ctm_by_splits(f, false),
        CtmMethod::SingleVsRest => sigma_ctm_by_splits(f, true),
    }
}

fn sigma_ctm_by_support<T: Scalar>(f: &Pmf<T>) -> Result<SigmaCtmReport<T>> {
    let sum = f.sum_pmf();
    let target = s_min(sum.mean(), f.d())?;
    let mut ok = true;
    for t in 0..=f.d() {
        if !sum.prob(t).eq_tol(&target.prob(t), PROPERTY_TOL) {
            ok = false;
            break;
        }
    }
    if ok {
        return Ok(SigmaCtmReport { holds: true, method: CtmMethod::Support, witness: None });
    }
    let zero = T::zero();
    let observed: Vec<usize> =
        (0..=f.d()).filter(|&t| !sum.prob(t).le_tol(&zero, PROPERTY_TOL)).collect();
    let expected: Vec<usize> =
        (0..=f.d()).filter(|&t| !target.prob(t).le_tol(&zero, PROPERTY_TOL)).collect();
    Ok(SigmaCtmReport {
        holds: false,
        method: CtmMethod::Support,
        witness: Some(SigmaCtmViolation::SumSpread { observed, expected }),
    })
}

fn sigma_ctm_by_splits<T: Scalar>(f: &Pmf<T>, single_vs_rest: bool) -> Result<SigmaCtmReport<T>> {
    let d = f.d();
    let method = if single_vs_rest { CtmMethod::SingleVsRest } else { CtmMethod::Definition };
    if d == 1 {
        return Ok(SigmaCtmReport { holds: true, method, witness: None });
    }
    let full = (1usize << d) - 1;
    for a_mask in 1..full {
        let b_mask = full ^ a_mask;
        if b_mask < a_mask {
            continue; // each unordered split once
        }
        if single_vs_rest && a_mask.count_ones() != 1 && b_mask.count_ones() != 1 {
            continue;
        }
        let block_a = mask_coordinates(a_mask);
        let block_b = mask_coordinates(b_mask);
        let joint = split_sums(f, &block_a, &block_b)?;
        if let Some(violation) = is_countermonotonic_pair(&joint).witness {
            return Ok(SigmaCtmReport {
                holds: false,
                method,
                witness: Some(SigmaCtmViolation::Split { block_a, block_b, violation }),
            });
        }
    }
    Ok(SigmaCtmReport { holds: true, method, witness: None })
}

fn mask_coordinates(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|&j| mask >> j & 1 == 1).collect()
}

// ---------------------------------------------------------------------------
// Upper sets of sub-hypercubes
// ---------------------------------------------------------------------------

/// Enumerates every upper set of the partial order on `{0,1}^k`, encoded as
/// bitmasks over outcome indices (bit `i` set means outcome `i` belongs to
/// the set). The empty and full sets are included. Results are sorted.
///
/// Counts for k = 1..6: 3, 6, 20, 168, 7581, 7828354.
pub fn upper_sets(k: usize) -> Result<Vec<u64>> {
    if k == 0 || k > NA_DIMENSION_BOUND {
        return Err(Error::DimensionBound {
            d: k,
            bound: NA_DIMENSION_BOUND,
            operation: "upper-set enumeration",
        });
    }
    // Split on the last coordinate: an upper set of {0,1}^k is a pair
    // (U0, U1) of upper sets of {0,1}^{k-1} with U0 ⊆ U1, where U0 covers
    // the outcomes with coordinate k-1 equal to 0 and U1 those equal to 1.
    let mut sets: Vec<u64> = vec![0b0, 0b1];
    for j in 1..=k {
        let shift = 1u64 << (j - 1); // outcomes in the smaller cube
        let mut next = Vec::new();
        for &u1 in &sets {
            for &u0 in &sets {
                if u0 & u1 == u0 {
                    next.push(u0 | (u1 << shift));
                }
            }
        }
        sets = next;
    }
    sets.sort_unstable();
    Ok(sets)
}

/// Lists the outcomes of `{0,1}^k` belonging to the upper set `mask`,
/// in increasing index order.
pub fn upper_set_members(mask: u64, k: usize) -> Vec<Outcome> {
    (0..1usize << k)
        .filter(|&i| mask >> i & 1 == 1)
        .map(Outcome::from_index)
        .collect()
}

/// Covariance of the upper-set indicator pair `(1[X_A ∈ U_A], 1[X_B ∈ U_B])`
/// where `A`, `B` are disjoint coordinate blocks and the upper sets are
/// bitmask-encoded over the respective block-local outcome indices.
pub fn upper_pair_covariance<T: Scalar>(
    f: &Pmf<T>,
    block_a: &[usize],
    block_b: &[usize],
    upper_a: u64,
    upper_b: u64,
) -> Result<T> {
    let joint = block_joint(f, block_a, block_b)?;
    let nb = 1usize << block_b.len();
    let mut e_ab = T::zero();
    let mut e_a = T::zero();
    let mut e_b = T::zero();
    for u in 0..1usize << block_a.len() {
        for v in 0..nb {
            let q = &joint[u * nb + v];
            let in_a = upper_a >> u & 1 == 1;
            let in_b = upper_b >> v & 1 == 1;
            if in_a {
                e_a = e_a + q.clone();
                if in_b {
                    e_ab = e_ab + q.clone();
                }
            }
            if in_b {
                e_b = e_b + q.clone();
            }
        }
    }
    Ok(e_ab - e_a * e_b)
}

/// Joint pmf of the block projections `(X_A, X_B)`, row-major over
/// block-local outcome indices.
fn block_joint<T: Scalar>(f: &Pmf<T>, block_a: &[usize], block_b: &[usize]) -> Result<Vec<T>> {
    let d = f.d();
    for &j in block_a.iter().chain(block_b) {
        if j >= d {
            return Err(Error::CoordinateOutOfRange { index: j, d });
        }
    }
    let nb = 1usize << block_b.len();
    let mut joint = vec![T::zero(); (1usize << block_a.len()) * nb];
    for (o, q) in f.support() {
        let u = o.project(block_a).index();
        let v = o.project(block_b).index();
        joint[u * nb + v] = joint[u * nb + v].clone() + q.clone();
    }
    Ok(joint)
}

/// Scans every unordered two-block partition of the coordinates and, within
/// each partition, every pair of nonconstant upper sets of the two block
/// cubes. For each candidate the covariances of the indicator pair under
/// each pmf in `pmfs` are handed to `visit`; returning `Some` stops the scan.
///
/// Covariances over a partition suffice to decide negative association and
/// the weak association order: for disjoint (non-covering) blocks, the
/// indicator of an upper set of a block cube equals the indicator of the
/// cylinder upper set in the partition completing that block, so every
/// disjoint-pair covariance is realized by some partition pair.
pub(crate) fn scan_partition_covariances<T: Scalar, R>(
    pmfs: &[&Pmf<T>],
    visit: &mut dyn FnMut(&[usize], &[usize], u64, u64, &[T]) -> Option<R>,
) -> Result<Option<R>> {
    let d = pmfs[0].d();
    debug_assert!(pmfs.iter().all(|f| f.d() == d));
    if d > NA_DIMENSION_BOUND {
        return Err(Error::DimensionBound {
            d,
            bound: NA_DIMENSION_BOUND,
            operation: "upper-set covariance scan",
        });
    }
    if d < 2 {
        return Ok(None);
    }
    let mut upper_cache: Vec<Option<Vec<u64>>> = vec![None; d];
    let full = (1usize << d) - 1;
    let mut covs = vec![T::zero(); pmfs.len()];
    for a_mask in 1..full {
        let b_mask = full ^ a_mask;
        if b_mask < a_mask {
            continue;
        }
        let block_a = mask_coordinates(a_mask);
        let block_b = mask_coordinates(b_mask);
        let (ka, kb) = (block_a.len(), block_b.len());
        let (na, nb) = (1usize << ka, 1usize << kb);
        for k in [ka, kb] {
            if upper_cache[k - 1].is_none() {
                upper_cache[k - 1] = Some(upper_sets(k)?);
            }
        }
        // Per-pmf joint of the block projections plus the X_B marginal.
        let mut joints = Vec::with_capacity(pmfs.len());
        let mut b_marginals = Vec::with_capacity(pmfs.len());
        for f in pmfs {
            let joint = block_joint(f, &block_a, &block_b)?;
            let mut bm = vec![T::zero(); nb];
            for u in 0..na {
                for v in 0..nb {
                    bm[v] = bm[v].clone() + joint[u * nb + v].clone();
                }
            }
            joints.push(joint);
            b_marginals.push(bm);
        }
        let ups_a = upper_cache[ka - 1].as_ref().unwrap();
        let ups_b = upper_cache[kb - 1].as_ref().unwrap();
        let full_a = if na == 64 { u64::MAX } else { (1u64 << na) - 1 };
        let full_b = if nb == 64 { u64::MAX } else { (1u64 << nb) - 1 };
        let mut row = vec![T::zero(); nb * pmfs.len()];
        for &ua in ups_a {
            if ua == 0 || ua == full_a {
                continue; // constant indicator: zero covariance
            }
            // row[pi * nb + v] = P_pi(X_A ∈ U_A, X_B = v); p_a = P_pi(X_A ∈ U_A)
            let mut p_a = vec![T::zero(); pmfs.len()];
            for x in row.iter_mut() {
                *x = T::zero();
            }
            for u in 0..na {
                if ua >> u & 1 == 0 {
                    continue;
                }
                for (pi, joint) in joints.iter().enumerate() {
                    for v in 0..nb {
                        row[pi * nb + v] = row[pi * nb + v].clone() + joint[u * nb + v].clone();
                    }
                }
            }
            for (pi, pa) in p_a.iter_mut().enumerate() {
                for v in 0..nb {
                    *pa = pa.clone() + row[pi * nb + v].clone();
                }
            }
            for &ub in ups_b {
                if ub == 0 || ub == full_b {
                    continue;
                }
                for pi in 0..pmfs.len() {
                    let mut e_ab = T::zero();
                    let mut p_b = T::zero();
                    for v in 0..nb {
                        if ub >> v & 1 == 1 {
                            e_ab = e_ab + row[pi * nb + v].clone();
                            p_b = p_b + b_marginals[pi][v].clone();
                        }
                    }
                    covs[pi] = e_ab - p_a[pi].clone() * p_b;
                }
                if let Some(r) = visit(&block_a, &block_b, ua, ub, &covs) {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Negative association
// ---------------------------------------------------------------------------

/// A pair of upper-set indicators over disjoint coordinate blocks with
/// positive covariance, witnessing failure of negative association.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperSetCovariance<T> {
    pub block_a: Vec<usize>,
    pub block_b: Vec<usize>,
    /// Members of the upper set over `block_a`'s cube (block-local outcomes).
    pub upper_a: Vec<Outcome>,
    pub upper_b: Vec<Outcome>,
    pub covariance: T,
}

/// Verdict of the negative-association check.
#[derive(Clone, Debug, PartialEq)]
pub struct NaReport<T> {
    pub holds: bool,
    /// Number of indicator pairs whose covariance was evaluated.
    pub checked: usize,
    pub witness: Option<UpperSetCovariance<T>>,
}

/// Checks negative association: `Cov(g1(X_A), g2(X_B)) <= 0` for all
/// disjoint blocks `A`, `B` and coordinatewise nondecreasing `g1`, `g2`.
/// It suffices to test 0/1-valued nondecreasing functions, i.e. upper-set
/// indicators, over the two blocks of each partition of the coordinates.
///
/// Bounded to `d <= 6` by upper-set enumeration; see [`NA_DIMENSION_BOUND`].
pub fn is_na<T: Scalar>(f: &Pmf<T>) -> Result<NaReport<T>> {
    let zero = T::zero();
    let mut checked = 0usize;
    let witness = scan_partition_covariances(&[f], &mut |ba, bb, ua, ub, covs| {
        checked += 1;
        if covs[0].le_tol(&zero, PROPERTY_TOL) {
            return None;
        }
        Some(UpperSetCovariance {
            block_a: ba.to_vec(),
            block_b: bb.to_vec(),
            upper_a: upper_set_members(ua, ba.len()),
            upper_b: upper_set_members(ub, bb.len()),
            covariance: covs[0].clone(),
        })
    })?;
    Ok(NaReport { holds: witness.is_none(), checked, witness })
}

// ---------------------------------------------------------------------------
// Negative supermodular dependence
// ---------------------------------------------------------------------------

/// Verdict of the negative-supermodular-dependence check: the pmf is below
/// the product of its own marginals in the supermodular order.
#[derive(Clone, Debug)]
pub struct NsdReport {
    pub holds: bool,
    /// Exact supermodular certificate data from the order comparison
    /// against the independent version.
    pub comparison: crate::orders::SmVerdict,
}

/// Checks negative supermodular dependence by comparing `f` with the
/// product of its own marginal means in the supermodular order.
pub fn is_nsd<T: Scalar>(f: &Pmf<T>) -> Result<NsdReport> {
    let fe = f.to_exact();
    let product = Pmf::product(&fe.marginal_means())?;
    let comparison = crate::orders::sm_leq(&fe, &product)?;
    let holds = matches!(
        comparison.relation,
        crate::orders::OrderRelation::Less | crate::orders::OrderRelation::Equal
    );
    Ok(NsdReport { holds, comparison })
}
