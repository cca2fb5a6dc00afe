//! Certified comparisons of multivariate Bernoulli pmfs within a common
//! Fréchet class (equal marginal means): the supermodular order, the weak
//! association order, and the convex order on coordinate sums.
//!
//! Every verdict carries a replayable certificate. A `Less`/`Greater`
//! supermodular verdict lists nonnegative mass transfers that rewrite the
//! smaller pmf into the larger one; `Incomparable` carries a supermodular
//! function refuting each direction. All arithmetic is exact: float inputs
//! are converted losslessly to rationals before comparison.

use num::rational::BigRational;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LpBuilder, LpOutcome, StandardLp};
use crate::outcome::Outcome;
use crate::pmf::{Pmf, SumPmf};
use crate::properties::{
    scan_partition_covariances, upper_set_members, PROPERTY_TOL,
};
use crate::scalar::Scalar;

/// Default dimension bound for the supermodular and weak-association
/// comparisons. The supermodular feasibility program has `2^d` rows and one
/// column per incomparable outcome pair; the weak-association scan
/// enumerates upper sets of block cubes. Both are practical up to `d = 6`.
pub const ORDER_DIMENSION_BOUND: usize = 6;

/// Outcome of an order comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderRelation {
    /// The left pmf is strictly below the right one.
    Less,
    /// The left pmf is strictly above the right one.
    Greater,
    /// The comparison cannot distinguish the two pmfs.
    Equal,
    /// Neither pmf is below the other.
    Incomparable,
}

// ---------------------------------------------------------------------------
// Supermodular order
// ---------------------------------------------------------------------------

/// An elementary supermodular mass transfer: move weight from the
/// incomparable outcomes `a`, `b` onto their meet and join. Applying it
/// leaves all marginal means unchanged and raises every supermodular
/// expectation.
#[derive(Clone, Debug, PartialEq)]
pub struct Transfer {
    pub a: Outcome,
    pub b: Outcome,
    pub weight: BigRational,
}

impl Transfer {
    pub fn meet(&self) -> Outcome {
        self.a.meet(self.b)
    }

    pub fn join(&self) -> Outcome {
        self.a.join(self.b)
    }
}

/// How a refuting supermodular function was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// The monomial `x ↦ ∏_{j ∈ subset} x_j`; the gap is a difference of
    /// cross moments.
    Monomial { subset: Outcome },
    /// Dual (Farkas) certificate of the transfer feasibility program.
    LpDual,
}

/// A supermodular function separating two pmfs: `E_left[φ] − E_right[φ] =
/// excess > 0`, which refutes `left ⪯_sm right`.
#[derive(Clone, Debug, PartialEq)]
pub struct SupermodularWitness {
    /// Values `φ(o)` indexed by outcome.
    pub phi: Vec<BigRational>,
    /// `E_left[φ] − E_right[φ]`, strictly positive.
    pub excess: BigRational,
    pub kind: WitnessKind,
}

/// Verdict of a supermodular-order comparison, with certificates.
#[derive(Clone, Debug)]
pub struct SmVerdict {
    pub relation: OrderRelation,
    /// For `Less`/`Greater`: transfers rewriting the ⪯-smaller pmf into the
    /// ⪯-larger one.
    pub transfers: Option<Vec<Transfer>>,
    /// Certificate that `left ⪯ right` fails.
    pub not_less: Option<SupermodularWitness>,
    /// Certificate that `right ⪯ left` fails.
    pub not_greater: Option<SupermodularWitness>,
}

/// Cross moments `μ_T = P(X_j = 1 ∀ j ∈ T)` for every subset `T`, indexed
/// by the subset's outcome encoding (superset-sum transform of the pmf).
fn monomial_moments(f: &Pmf<BigRational>) -> Vec<BigRational> {
    let d = f.d();
    let mut mu: Vec<BigRational> = f.probs().to_vec();
    for j in 0..d {
        let bit = 1usize << j;
        for t in 0..1usize << d {
            if t & bit == 0 {
                let upper = mu[t | bit].clone();
                mu[t] = mu[t].clone() + upper;
            }
        }
    }
    mu
}

fn monomial_witness(
    subset: usize,
    d: usize,
    excess: BigRational,
) -> SupermodularWitness {
    let phi = (0..1usize << d)
        .map(|o| {
            if o & subset == subset {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        })
        .collect();
    SupermodularWitness { phi, excess, kind: WitnessKind::Monomial { subset: Outcome::from_index(subset) } }
}

/// Unordered incomparable outcome pairs of `{0,1}^d`, in lexicographic order.
fn incomparable_pairs(d: usize) -> Vec<(Outcome, Outcome)> {
    let n = 1usize << d;
    let mut pairs = Vec::new();
    for ia in 0..n {
        let a = Outcome::from_index(ia);
        for ib in ia + 1..n {
            let b = Outcome::from_index(ib);
            if !a.comparable(b) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Feasibility program for `low ⪯_sm high`: find nonnegative weights on the
/// elementary transfers whose net effect is `high − low`.
fn transfer_program(
    low: &Pmf<BigRational>,
    high: &Pmf<BigRational>,
    pairs: &[(Outcome, Outcome)],
) -> StandardLp {
    let n = 1usize << low.d();
    let mut a = vec![vec![BigRational::zero(); pairs.len()]; n];
    for (col, &(i, k)) in pairs.iter().enumerate() {
        let one = BigRational::from_integer(1.into());
        a[i.meet(k).index()][col] += one.clone();
        a[i.join(k).index()][col] += one.clone();
        a[i.index()][col] -= one.clone();
        a[k.index()][col] -= one;
    }
    let b = (0..n)
        .map(|o| high.probs()[o].clone() - low.probs()[o].clone())
        .collect();
    StandardLp { a, b, c: vec![BigRational::zero(); pairs.len()] }
}

/// Converts a Farkas certificate of transfer infeasibility into a
/// supermodular separating function refuting `low ⪯_sm high`.
fn dual_witness(
    farkas: &[BigRational],
    low: &Pmf<BigRational>,
    high: &Pmf<BigRational>,
) -> SupermodularWitness {
    // yᵀA ≤ 0 means y(meet) + y(join) − y(i) − y(k) ≤ 0 per pair, so
    // φ = −y is supermodular; yᵀb > 0 means E_low[φ] − E_high[φ] > 0.
    let phi: Vec<BigRational> = farkas.iter().map(|y| -y.clone()).collect();
    let mut excess = BigRational::zero();
    for (o, v) in phi.iter().enumerate() {
        excess += v * (low.probs()[o].clone() - high.probs()[o].clone());
    }
    debug_assert!(excess.is_positive());
    SupermodularWitness { phi, excess, kind: WitnessKind::LpDual }
}

/// Applies elementary transfers to a pmf, returning the rewritten pmf.
/// Fails if any intermediate mass would go negative.
pub fn apply_transfers(f: &Pmf<BigRational>, transfers: &[Transfer]) -> Result<Pmf<BigRational>> {
    let mut probs = f.probs().to_vec();
    let n = probs.len();
    for t in transfers {
        for o in [t.a, t.b, t.meet(), t.join()] {
            if o.index() >= n {
                return Err(Error::CoordinateOutOfRange { index: o.index(), d: f.d() });
            }
        }
        if t.weight.is_negative() {
            return Err(Error::NegativeProbability {
                outcome: format!("transfer ({}, {})", t.a.key(f.d()), t.b.key(f.d())),
                value: t.weight.to_string(),
            });
        }
        probs[t.meet().index()] += t.weight.clone();
        probs[t.join().index()] += t.weight.clone();
        probs[t.a.index()] -= t.weight.clone();
        probs[t.b.index()] -= t.weight.clone();
    }
    Pmf::new(f.d(), probs)
}

/// Checks that `witness` is a genuine refutation of `left ⪯_sm right`:
/// `φ` is supermodular and `E_left[φ] − E_right[φ] = excess > 0`.
pub fn verify_supermodular_witness(
    witness: &SupermodularWitness,
    left: &Pmf<BigRational>,
    right: &Pmf<BigRational>,
) -> bool {
    let d = left.d();
    if right.d() != d || witness.phi.len() != 1 << d {
        return false;
    }
    for (a, b) in incomparable_pairs(d) {
        let lattice = witness.phi[a.meet(b).index()].clone()
            + witness.phi[a.join(b).index()].clone();
        let separate =
            witness.phi[a.index()].clone() + witness.phi[b.index()].clone();
        if lattice < separate {
            return false;
        }
    }
    let mut excess = BigRational::zero();
    for (o, v) in witness.phi.iter().enumerate() {
        excess += v * (left.probs()[o].clone() - right.probs()[o].clone());
    }
    excess == witness.excess && excess.is_positive()
}

/// Compares two pmfs in the supermodular order. Requires equal dimensions
/// and exactly equal marginal means (after lossless conversion to rationals);
/// bounded to `d <=` [`ORDER_DIMENSION_BOUND`].
///
/// Distinct pmfs with equal marginals always differ in some cross moment
/// `μ_T`, `|T| >= 2`, and the monomial `∏_{j∈T} x_j` is supermodular, so the
/// moment comparison refutes at least one direction outright. At most one
/// exact feasibility program then settles the remaining direction, either
/// with explicit transfers or with a dual separating function.
pub fn sm_leq<T: Scalar>(f: &Pmf<T>, g: &Pmf<T>) -> Result<SmVerdict> {
    let (fe, ge) = exact_pair(f, g, "supermodular comparison")?;
    if fe == ge {
        return Ok(SmVerdict {
            relation: OrderRelation::Equal,
            transfers: None,
            not_less: None,
            not_greater: None,
        });
    }
    let d = fe.d();
    let mf = monomial_moments(&fe);
    let mg = monomial_moments(&ge);
    let mut not_less: Option<SupermodularWitness> = None;
    let mut not_greater: Option<SupermodularWitness> = None;
    for t in 0..1usize << d {
        if (t as u64).count_ones() < 2 {
            continue; // equal by normalization / marginal precondition
        }
        if not_less.is_none() && mf[t] > mg[t] {
            not_less = Some(monomial_witness(t, d, mf[t].clone() - mg[t].clone()));
        }
        if not_greater.is_none() && mg[t] > mf[t] {
            not_greater = Some(monomial_witness(t, d, mg[t].clone() - mf[t].clone()));
        }
        if not_less.is_some() && not_greater.is_some() {
            break;
        }
    }
    match (not_less, not_greater) {
        (Some(nl), Some(ng)) => Ok(SmVerdict {
            relation: OrderRelation::Incomparable,
            transfers: None,
            not_less: Some(nl),
            not_greater: Some(ng),
        }),
        (None, Some(ng)) => {
            // Only f ⪯ g remains possible; settle it exactly.
            match solve_direction(&fe, &ge)? {
                Ok(transfers) => Ok(SmVerdict {
                    relation: OrderRelation::Less,
                    transfers: Some(transfers),
                    not_less: None,
                    not_greater: Some(ng),
                }),
                Err(nl) => Ok(SmVerdict {
                    relation: OrderRelation::Incomparable,
                    transfers: None,
                    not_less: Some(nl),
                    not_greater: Some(ng),
                }),
            }
        }
        (Some(nl), None) => match solve_direction(&ge, &fe)? {
            Ok(transfers) => Ok(SmVerdict {
                relation: OrderRelation::Greater,
                transfers: Some(transfers),
                not_less: Some(nl),
                not_greater: None,
            }),
            Err(ng) => Ok(SmVerdict {
                relation: OrderRelation::Incomparable,
                transfers: None,
                not_less: Some(nl),
                not_greater: Some(ng),
            }),
        },
        (None, None) => {
            unreachable!("distinct pmfs with equal marginals differ in a cross moment")
        }
    }
}

/// Solves the transfer program for `low ⪯_sm high`. Returns the transfer
/// list on feasibility, or the dual refutation on infeasibility.
fn solve_direction(
    low: &Pmf<BigRational>,
    high: &Pmf<BigRational>,
) -> Result<std::result::Result<Vec<Transfer>, SupermodularWitness>> {
    let pairs = incomparable_pairs(low.d());
    let program = transfer_program(low, high, &pairs);
    match lp::solve(&program)? {
        LpOutcome::Optimal { x, .. } => {
            let transfers: Vec<Transfer> = pairs
                .iter()
                .zip(&x)
                .filter(|(_, w)| w.is_positive())
                .map(|(&(a, b), w)| Transfer { a, b, weight: w.clone() })
                .collect();
            debug_assert_eq!(apply_transfers(low, &transfers)?, *high);
            Ok(Ok(transfers))
        }
        LpOutcome::Infeasible { farkas } => {
            let witness = dual_witness(&farkas, low, high);
            debug_assert!(verify_supermodular_witness(&witness, low, high));
            Ok(Err(witness))
        }
        LpOutcome::Unbounded => Err(Error::Unbounded),
    }
}

fn exact_pair<T: Scalar>(
    f: &Pmf<T>,
    g: &Pmf<T>,
    operation: &'static str,
) -> Result<(Pmf<BigRational>, Pmf<BigRational>)> {
    if f.d() != g.d() {
        return Err(Error::DimensionMismatch { left: f.d(), right: g.d() });
    }
    if f.d() > ORDER_DIMENSION_BOUND {
        return Err(Error::DimensionBound {
            d: f.d(),
            bound: ORDER_DIMENSION_BOUND,
            operation,
        });
    }
    let fe = f.to_exact();
    let ge = g.to_exact();
    let pf = fe.marginal_means();
    let pg = ge.marginal_means();
    for j in 0..fe.d() {
        if pf.get(j) != pg.get(j) {
            return Err(Error::MarginalMismatch {
                coordinate: j,
                left: pf.get(j).to_string(),
                right: pg.get(j).to_string(),
            });
        }
    }
    Ok((fe, ge))
}

// ---------------------------------------------------------------------------
// Weak association order
// ---------------------------------------------------------------------------

/// One upper-set indicator pair together with its covariance under each of
/// the two compared pmfs.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceGap {
    pub block_a: Vec<usize>,
    pub block_b: Vec<usize>,
    /// Members of the upper set over `block_a`'s cube (block-local outcomes).
    pub upper_a: Vec<Outcome>,
    pub upper_b: Vec<Outcome>,
    /// Covariance under the left pmf.
    pub cov_left: BigRational,
    /// Covariance under the right pmf.
    pub cov_right: BigRational,
}

/// Verdict of a weak-association-order comparison.
#[derive(Clone, Debug)]
pub struct WassocVerdict {
    pub relation: OrderRelation,
    /// Number of indicator pairs evaluated.
    pub checked: usize,
    /// In a `Less`/`Greater` verdict, the strict inequality with the
    /// smallest covariance gap.
    pub tightest: Option<CovarianceGap>,
    /// Pair with `cov_left > cov_right`, refuting `left ⪯ right`.
    pub not_less: Option<CovarianceGap>,
    /// Pair with `cov_right > cov_left`, refuting `right ⪯ left`.
    pub not_greater: Option<CovarianceGap>,
}

/// Compares two pmfs in the weak association order: `f ⪯ g` iff
/// `Cov_f(g1(X_A), g2(X_B)) <= Cov_g(g1(X_A), g2(X_B))` for all disjoint
/// coordinate blocks and coordinatewise nondecreasing `g1`, `g2`. As in the
/// negative-association check it suffices to compare upper-set indicator
/// pairs over two-block partitions. Requires equal marginal means; exact
/// arithmetic; bounded to `d <=` [`ORDER_DIMENSION_BOUND`].
pub fn wassoc_leq<T: Scalar>(f: &Pmf<T>, g: &Pmf<T>) -> Result<WassocVerdict> {
    let (fe, ge) = exact_pair(f, g, "weak association comparison")?;
    if fe == ge {
        return Ok(WassocVerdict {
            relation: OrderRelation::Equal,
            checked: 0,
            tightest: None,
            not_less: None,
            not_greater: None,
        });
    }
    let mut checked = 0usize;
    let mut not_less: Option<CovarianceGap> = None;
    let mut not_greater: Option<CovarianceGap> = None;
    // Smallest |cov_right − cov_left| seen in each non-violating direction.
    let mut tight_forward: Option<CovarianceGap> = None;
    let mut tight_backward: Option<CovarianceGap> = None;
    scan_partition_covariances(&[&fe, &ge], &mut |ba, bb, ua, ub, covs| {
        checked += 1;
        let gap = || CovarianceGap {
            block_a: ba.to_vec(),
            block_b: bb.to_vec(),
            upper_a: upper_set_members(ua, ba.len()),
            upper_b: upper_set_members(ub, bb.len()),
            cov_left: covs[0].clone(),
            cov_right: covs[1].clone(),
        };
        match covs[0].cmp(&covs[1]) {
            std::cmp::Ordering::Greater => {
                if not_less.is_none() {
                    not_less = Some(gap());
                }
                let slack = covs[0].clone() - covs[1].clone();
                if tight_backward
                    .as_ref()
                    .map(|t| slack < t.cov_left.clone() - t.cov_right.clone())
                    .unwrap_or(true)
                {
                    tight_backward = Some(gap());
                }
            }
            std::cmp::Ordering::Less => {
                if not_greater.is_none() {
                    not_greater = Some(gap());
                }
                let slack = covs[1].clone() - covs[0].clone();
                if tight_forward
                    .as_ref()
                    .map(|t| slack < t.cov_right.clone() - t.cov_left.clone())
                    .unwrap_or(true)
                {
                    tight_forward = Some(gap());
                }
            }
            std::cmp::Ordering::Equal => {}
        }
        if not_less.is_some() && not_greater.is_some() {
            Some(()) // both directions refuted: stop early
        } else {
            None
        }
    })?;
    let (relation, tightest) = match (&not_less, &not_greater) {
        (None, None) => (OrderRelation::Equal, None),
        (None, Some(_)) => (OrderRelation::Less, tight_forward),
        (Some(_), None) => (OrderRelation::Greater, tight_backward),
        (Some(_), Some(_)) => (OrderRelation::Incomparable, None),
    };
    Ok(WassocVerdict { relation, checked, tightest, not_less, not_greater })
}

/// Asserts the hierarchy between the two orders on a concrete pair: a
/// strict weak-association comparison must be reproduced by the
/// supermodular comparison. Returns `false` if the implication fails.
pub fn wassoc_implies_sm_consistent<T: Scalar>(f: &Pmf<T>, g: &Pmf<T>) -> Result<bool> {
    let wa = wassoc_leq(f, g)?;
    Ok(match wa.relation {
        OrderRelation::Less => matches!(
            sm_leq(f, g)?.relation,
            OrderRelation::Less | OrderRelation::Equal
        ),
        OrderRelation::Greater => matches!(
            sm_leq(f, g)?.relation,
            OrderRelation::Greater | OrderRelation::Equal
        ),
        OrderRelation::Equal => matches!(sm_leq(f, g)?.relation, OrderRelation::Equal),
        OrderRelation::Incomparable => true,
    })
}

// ---------------------------------------------------------------------------
// Convex order on sums
// ---------------------------------------------------------------------------

/// A retention level where the stop-loss transforms of the two sums differ.
#[derive(Clone, Debug, PartialEq)]
pub struct StopLossGap<T> {
    pub t: usize,
    /// `E[(S_left − t)₊]`.
    pub left: T,
    /// `E[(S_right − t)₊]`.
    pub right: T,
}

/// Verdict of a convex-order comparison of two integer sums.
#[derive(Clone, Debug, PartialEq)]
pub struct CxVerdict<T> {
    pub relation: OrderRelation,
    /// Level refuting `left ⪯_cx right` (`left > right` there).
    pub not_less: Option<StopLossGap<T>>,
    /// Level refuting `right ⪯_cx left`.
    pub not_greater: Option<StopLossGap<T>>,
}

/// Compares two integer-supported sum distributions in the convex order.
/// For equal means this reduces to comparing the stop-loss transforms
/// `E[(S − t)₊]` at every integer retention `t`; unequal means are an error
/// because the convex order cannot hold in either direction.
pub fn cx_leq<T: Scalar>(left: &SumPmf<T>, right: &SumPmf<T>) -> Result<CxVerdict<T>> {
    let ml = left.mean();
    let mr = right.mean();
    if !ml.eq_tol(&mr, PROPERTY_TOL) {
        return Err(Error::MeanMismatch { left: ml.to_string(), right: mr.to_string() });
    }
    let t_max = left.max_value().max(right.max_value());
    let mut not_less: Option<StopLossGap<T>> = None;
    let mut not_greater: Option<StopLossGap<T>> = None;
    for t in 0..t_max {
        let l = left.stop_loss(t);
        let r = right.stop_loss(t);
        if not_less.is_none() && !l.le_tol(&r, PROPERTY_TOL) {
            not_less = Some(StopLossGap { t, left: l.clone(), right: r.clone() });
        }
        if not_greater.is_none() && !r.le_tol(&l, PROPERTY_TOL) {
            not_greater = Some(StopLossGap { t, left: l, right: r });
        }
        if not_less.is_some() && not_greater.is_some() {
            break;
        }
    }
    let relation = match (&not_less, &not_greater) {
        (None, None) => OrderRelation::Equal,
        (None, Some(_)) => OrderRelation::Less,
        (Some(_), None) => OrderRelation::Greater,
        (Some(_), Some(_)) => OrderRelation::Incomparable,
    };
    Ok(CxVerdict { relation, not_less, not_greater })
}

/// Convex-order comparison of the coordinate sums of two pmfs.
pub fn sum_cx_leq<T: Scalar>(f: &Pmf<T>, g: &Pmf<T>) -> Result<CxVerdict<T>> {
    cx_leq(&f.sum_pmf(), &g.sum_pmf())
}

// ---------------------------------------------------------------------------
// Position relative to the whole minimal-sum class
// ---------------------------------------------------------------------------

/// Where a pmf stands, in the supermodular order, relative to the *entire*
/// class of pmfs with the same marginals supported on the two minimal sum
/// levels: a member below it, a member above it, both, or neither.
#[derive(Clone, Debug)]
pub struct SigmaClassPosition {
    /// A class member `g` with `g ⪯_sm f`, when one exists.
    pub below: Option<Pmf<BigRational>>,
    /// A class member `g` with `f ⪯_sm g`, when one exists.
    pub above: Option<Pmf<BigRational>>,
}

impl SigmaClassPosition {
    /// No member of the class is comparable to the pmf in either direction.
    pub fn is_stalled(&self) -> bool {
        self.below.is_none() && self.above.is_none()
    }
}

/// Decides, with one exact feasibility program per direction, whether *any*
/// convex combination of the minimal-sum polytope's vertices is below
/// (respectively above) `f` in the supermodular order. This is strictly
/// stronger than testing members one by one: the program searches the whole
/// class at once by solving for vertex weights `λ` and transfer weights `w`
/// with `Vλ ± Tw = f`.
pub fn sigma_class_position<T: Scalar>(f: &Pmf<T>) -> Result<SigmaClassPosition> {
    let fe = f.to_exact();
    let d = fe.d();
    if d > ORDER_DIMENSION_BOUND {
        return Err(Error::DimensionBound {
            d,
            bound: ORDER_DIMENSION_BOUND,
            operation: "class-wide supermodular comparison",
        });
    }
    let p = fe.marginal_means();
    let poly = crate::polytope::enumerate_vertices(&p, true)?;
    let pairs = incomparable_pairs(d);
    let n_v = poly.num_vertices();
    let one = BigRational::from_integer(1.into());

    // `transfer_sign = +1` solves Vλ + Tw = f (a member below f);
    // `−1` solves Vλ − Tw = f (a member above f). The normalization Σλ = 1
    // is implied: transfer columns and `f − Σλ·vertex` both sum to zero.
    let solve_side = |transfer_sign: i64| -> Result<Option<Pmf<BigRational>>> {
        let sign = BigRational::from_integer(transfer_sign.into());
        let mut lp = LpBuilder::new(n_v + pairs.len());
        for o in Outcome::all(d) {
            let mut row: Vec<BigRational> = poly
                .vertices()
                .iter()
                .map(|v| v.prob(o).clone())
                .collect();
            for &(i, k) in &pairs {
                let mut c = BigRational::zero();
                if o == i.meet(k) {
                    c += one.clone();
                }
                if o == i.join(k) {
                    c += one.clone();
                }
                if o == i || o == k {
                    c -= one.clone();
                }
                row.push(sign.clone() * c);
            }
            lp.add_eq(row, fe.prob(o).clone());
        }
        match lp.solve()? {
            LpOutcome::Optimal { x, .. } => Ok(Some(poly.reconstruct(&x[..n_v])?)),
            LpOutcome::Infeasible { .. } => Ok(None),
            LpOutcome::Unbounded => Err(Error::Unbounded),
        }
    };
    Ok(SigmaClassPosition {
        below: solve_side(1)?,
        above: solve_side(-1)?,
    })
}
