//! Probability mass functions on the Boolean cube `{0,1}^d` and the basic
//! quantities attached to them: marginal means, the distribution of the
//! coordinate sum, entropy, and the extremal elements of a Fréchet class.
//!
//! A Fréchet class fixes the vector of marginal means p and lets the
//! dependence structure vary. Two of its distinguished elements are built
//! here: the product pmf (independence) and, when it exists, the pointwise
//! lower Fréchet bound. The minimal sum distribution `s_min` concentrates the
//! coordinate sum on the two integers surrounding its mean; a pmf whose sum
//! reaches it is supported on the two corresponding levels of the cube.

use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::outcome::{check_dimension, Outcome};
use crate::scalar::Scalar;

/// Validation tolerance for floating-point normalization checks. Exact mode
/// ignores it.
pub const FLOAT_SUM_TOL: f64 = 1e-12;

/// A pmf on `{0,1}^d`, dense over all `2^d` outcomes.
#[derive(Clone, PartialEq, Debug)]
pub struct Pmf<T> {
    d: usize,
    probs: Vec<T>,
}

impl<T: Scalar> Pmf<T> {
    /// Validates length `2^d`, nonnegativity, and total mass 1.
    pub fn new(d: usize, probs: Vec<T>) -> Result<Self> {
        check_dimension(d)?;
        if probs.len() != 1 << d {
            return Err(Error::BadLength {
                got: probs.len(),
                expected: 1 << d,
            });
        }
        for (i, v) in probs.iter().enumerate() {
            if !v.nonneg_tol(0.0) {
                return Err(Error::NegativeProbability {
                    outcome: Outcome::from_index(i).key(d),
                    value: format!("{v}"),
                });
            }
        }
        let total: T = probs.iter().cloned().sum();
        if !total.eq_tol(&T::one(), FLOAT_SUM_TOL) {
            return Err(Error::BadNormalization {
                got: format!("{total}"),
            });
        }
        Ok(Pmf { d, probs })
    }

    /// Builds from a sparse list of `(outcome, mass)` pairs; omitted outcomes
    /// get zero.
    pub fn from_support<I>(d: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Outcome, T)>,
    {
        check_dimension(d)?;
        let mut probs = vec![T::zero(); 1 << d];
        for (o, v) in entries {
            if o.index() >= 1 << d {
                return Err(Error::InvalidOutcomeKey {
                    key: format!("{}", o.index()),
                    reason: format!("index out of range for dimension {d}"),
                });
            }
            probs[o.index()] = probs[o.index()].clone() + v;
        }
        Pmf::new(d, probs)
    }

    pub fn point_mass(d: usize, at: Outcome) -> Result<Self> {
        Pmf::from_support(d, [(at, T::one())])
    }

    /// Product pmf of independent Bernoulli coordinates with the given means.
    pub fn product(marginals: &Marginals<T>) -> Result<Self> {
        let d = marginals.d();
        check_dimension(d)?;
        let mut probs = Vec::with_capacity(1 << d);
        for o in Outcome::all(d) {
            let mut v = T::one();
            for j in 0..d {
                let p = marginals.get(j).clone();
                v = v * if o.bit(j) { p } else { T::one() - p };
            }
            probs.push(v);
        }
        Pmf::new(d, probs)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn prob(&self, o: Outcome) -> &T {
        &self.probs[o.index()]
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn support(&self) -> impl Iterator<Item = (Outcome, &T)> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (Outcome::from_index(i), v))
    }

    pub fn marginal_means(&self) -> Marginals<T> {
        let mut p = vec![T::zero(); self.d];
        for (o, v) in self.probs.iter().enumerate() {
            for (j, pj) in p.iter_mut().enumerate() {
                if Outcome::from_index(o).bit(j) {
                    *pj = pj.clone() + v.clone();
                }
            }
        }
        Marginals(p)
    }

    /// Distribution of the coordinate sum `S = I_1 + … + I_d`.
    pub fn sum_pmf(&self) -> SumPmf<T> {
        let mut values = vec![T::zero(); self.d + 1];
        for (o, v) in self.probs.iter().enumerate() {
            let lvl = Outcome::from_index(o).level();
            values[lvl] = values[lvl].clone() + v.clone();
        }
        SumPmf { values }
    }

    /// Marginal pmf of the coordinates listed in `keep` (strictly increasing).
    pub fn marginalize(&self, keep: &[usize]) -> Result<Pmf<T>> {
        if keep.is_empty() {
            return Err(Error::EmptySubset {
                context: "marginalize",
            });
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) || *keep.last().unwrap() >= self.d {
            return Err(Error::CoordinateOutOfRange {
                index: *keep.last().unwrap(),
                d: self.d,
            });
        }
        let k = keep.len();
        let mut probs = vec![T::zero(); 1 << k];
        for (o, v) in self.probs.iter().enumerate() {
            let t = Outcome::from_index(o).project(keep).index();
            probs[t] = probs[t].clone() + v.clone();
        }
        Pmf::new(k, probs)
    }

    /// Shannon entropy in nats, with the convention `0 ln 0 = 0`. Always
    /// evaluated in floating point; exact entries convert first.
    pub fn entropy(&self) -> f64 {
        self.probs
            .iter()
            .map(|v| {
                let x = v.to_f64();
                if x > 0.0 {
                    -x * x.ln()
                } else {
                    0.0
                }
            })
            .sum()
    }

    pub fn second_moment(&self, j1: usize, j2: usize) -> T {
        let mut s = T::zero();
        for (o, v) in self.probs.iter().enumerate() {
            let o = Outcome::from_index(o);
            if o.bit(j1) && o.bit(j2) {
                s = s + v.clone();
            }
        }
        s
    }

    pub fn covariance(&self, j1: usize, j2: usize) -> T {
        let p = self.marginal_means();
        self.second_moment(j1, j2) - p.get(j1).clone() * p.get(j2).clone()
    }

    /// `Σ_{j1<j2} E[I_{j1} I_{j2}]`, computed as `E[S(S−1)]/2`; the two forms
    /// agree identically since both count pairs of ones per outcome.
    pub fn cross_moment_sum(&self) -> T {
        let mut s = T::zero();
        for (o, v) in self.probs.iter().enumerate() {
            let lvl = Outcome::from_index(o).level() as i64;
            s = s + v.clone() * T::from_int(lvl * (lvl - 1) / 2);
        }
        s
    }

    /// Convex combination `(1−alpha)·self + alpha·other`.
    pub fn mix(&self, other: &Pmf<T>, alpha: T) -> Result<Pmf<T>> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        let one_minus = T::one() - alpha.clone();
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| one_minus.clone() * a.clone() + alpha.clone() * b.clone())
            .collect();
        Pmf::new(self.d, probs)
    }

    /// Relabels coordinates: coordinate `j` of the result is coordinate
    /// `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Pmf<T>> {
        if perm.len() != self.d {
            return Err(Error::BadLength {
                got: perm.len(),
                expected: self.d,
            });
        }
        let mut probs = vec![T::zero(); 1 << self.d];
        for (o, v) in self.probs.iter().enumerate() {
            let o = Outcome::from_index(o);
            let mut t = 0usize;
            for (j, &src) in perm.iter().enumerate() {
                if o.bit(src) {
                    t |= 1 << j;
                }
            }
            probs[t] = v.clone();
        }
        Pmf::new(self.d, probs)
    }

    pub fn to_f64(&self) -> Pmf<f64> {
        Pmf {
            d: self.d,
            probs: self.probs.iter().map(|v| v.to_f64()).collect(),
        }
    }

    /// Lossless conversion into exact arithmetic: floats become the rationals
    /// they denote bit for bit; rational entries pass through unchanged.
    pub fn to_exact(&self) -> Pmf<BigRational> {
        Pmf {
            d: self.d,
            probs: self.probs.iter().map(|v| v.to_exact()).collect(),
        }
    }
}

impl Pmf<f64> {
    /// Lossless conversion into exact mode; alias of [`Pmf::to_exact`].
    pub fn to_rational(&self) -> Pmf<BigRational> {
        self.to_exact()
    }
}

/// Marginal means `p = (p_1, …, p_d)`, each validated into `[0, 1]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Marginals<T>(Vec<T>);

impl<T: Scalar> Marginals<T> {
    pub fn new(p: Vec<T>) -> Result<Self> {
        check_dimension(p.len())?;
        for (j, v) in p.iter().enumerate() {
            if !v.nonneg_tol(0.0) || !v.le_tol(&T::one(), 0.0) {
                return Err(Error::MarginalOutOfRange {
                    coordinate: j,
                    value: format!("{v}"),
                });
            }
        }
        Ok(Marginals(p))
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, j: usize) -> &T {
        &self.0[j]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    /// Total mean `p_• = p_1 + … + p_d`.
    pub fn p_bullet(&self) -> T {
        self.0.iter().cloned().sum()
    }

    pub fn all_equal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn strictly_interior(&self) -> bool {
        self.0.iter().all(|v| *v > T::zero() && *v < T::one())
    }

    pub fn to_f64(&self) -> Marginals<f64> {
        Marginals(self.0.iter().map(|v| v.to_f64()).collect())
    }

    /// Lossless conversion into exact arithmetic.
    pub fn to_exact(&self) -> Marginals<BigRational> {
        Marginals(self.0.iter().map(|v| v.to_exact()).collect())
    }
}

/// Distribution of an integer-valued sum on `{0, …, d}`.
#[derive(Clone, PartialEq, Debug)]
pub struct SumPmf<T> {
    values: Vec<T>,
}

impl<T: Scalar> SumPmf<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::BadLength {
                got: 0,
                expected: 1,
            });
        }
        for (y, v) in values.iter().enumerate() {
            if !v.nonneg_tol(0.0) {
                return Err(Error::NegativeProbability {
                    outcome: format!("{y}"),
                    value: format!("{v}"),
                });
            }
        }
        let total: T = values.iter().cloned().sum();
        if !total.eq_tol(&T::one(), FLOAT_SUM_TOL) {
            return Err(Error::BadNormalization {
                got: format!("{total}"),
            });
        }
        Ok(SumPmf { values })
    }

    pub fn max_value(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn prob(&self, y: usize) -> T {
        self.values.get(y).cloned().unwrap_or_else(T::zero)
    }

    pub fn mean(&self) -> T {
        self.values
            .iter()
            .enumerate()
            .map(|(y, v)| T::from_int(y as i64) * v.clone())
            .sum()
    }

    /// `E[(S − t)_+]` at an integer threshold.
    pub fn stop_loss(&self, t: usize) -> T {
        self.values
            .iter()
            .enumerate()
            .skip(t + 1)
            .map(|(y, v)| T::from_int((y - t) as i64) * v.clone())
            .sum()
    }

    /// The single atom carrying all mass, if the distribution is degenerate
    /// (up to `tol` per entry in floating mode).
    pub fn point_mass_at(&self, tol: f64) -> Option<usize> {
        let mut at = None;
        for (y, v) in self.values.iter().enumerate() {
            if !v.le_tol(&T::zero(), tol) {
                if at.is_some() {
                    return None;
                }
                at = Some(y);
            }
        }
        at
    }
}

/// The convex-order-minimal distribution on `{0, …, d}` with the given mean:
/// mass `m+1−μ` at `m = ⌊μ⌋` and `μ−m` at `m+1` (a point mass when `μ` is an
/// integer). Every integer-valued sum with mean `μ` dominates it in convex
/// order.
pub fn s_min<T: Scalar>(mean: T, d: usize) -> Result<SumPmf<T>> {
    check_dimension(d)?;
    let upper = T::from_int(d as i64);
    if !mean.nonneg_tol(0.0) || !mean.le_tol(&upper, 0.0) {
        return Err(Error::MarginalOutOfRange {
            coordinate: 0,
            value: format!("{mean}"),
        });
    }
    let m = mean.floor_i64().clamp(0, d as i64 - 1) as usize;
    let mut values = vec![T::zero(); d + 1];
    let frac = mean - T::from_int(m as i64);
    values[m] = T::one() - frac.clone();
    values[m + 1] = frac;
    SumPmf::new(values)
}

/// Whether the pointwise lower Fréchet bound of the class with these marginals
/// is itself a pmf: exactly when `p_• ≤ 1` or `p_• ≥ d−1`.
pub fn frechet_lower_is_pmf<T: Scalar>(marginals: &Marginals<T>) -> bool {
    let pb = marginals.p_bullet();
    let d = marginals.d() as i64;
    pb.le_tol(&T::one(), 0.0) || T::from_int(d - 1).le_tol(&pb, 0.0)
}

/// The lower Fréchet bound as a pmf. For `p_• ≤ 1` it puts `1 − p_•` at the
/// origin and `p_j` on the j-th unit vector; for `p_• ≥ d−1` the bit-flipped
/// mirror applies. Errors when neither regime holds (the bound is then not a
/// distribution).
pub fn frechet_lower_pmf<T: Scalar>(marginals: &Marginals<T>) -> Result<Pmf<T>> {
    let d = marginals.d();
    check_dimension(d)?;
    let pb = marginals.p_bullet();
    if pb.le_tol(&T::one(), 0.0) {
        let mut entries = vec![(Outcome::from_index(0), T::one() - pb)];
        for j in 0..d {
            entries.push((Outcome::from_index(1 << j), marginals.get(j).clone()));
        }
        return Pmf::from_support(d, entries);
    }
    if T::from_int(d as i64 - 1).le_tol(&pb, 0.0) {
        let top = Outcome::from_index((1 << d) - 1);
        let mut entries = vec![(top, pb - T::from_int(d as i64 - 1))];
        for j in 0..d {
            entries.push((
                Outcome::from_index(top.index() ^ (1 << j)),
                T::one() - marginals.get(j).clone(),
            ));
        }
        return Pmf::from_support(d, entries);
    }
    Err(Error::Infeasible {
        context: "lower Fréchet bound is not a pmf for 1 < p_• < d−1",
    })
}


#[cfg(test)]
mod tests {
    use super::tests_support::two_level_positive_cov;
    use super::*;
    use num::rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn validation_rejects_bad_data() {
        assert!(Pmf::new(2, vec![0.5, 0.5]).is_err());
        assert!(Pmf::new(1, vec![-0.1, 1.1]).is_err());
        assert!(Pmf::new(1, vec![0.6, 0.6]).is_err());
        assert!(Pmf::<f64>::new(0, vec![1.0]).is_err());
    }

    #[test]
    fn marginals_of_reference_pmf() {
        let f = two_level_positive_cov();
        let p = f.marginal_means();
        assert_eq!(p.as_slice(), &[r(2, 5), r(2, 5), r(2, 5)]);
        assert_eq!(p.p_bullet(), r(6, 5));
        assert!(p.all_equal());
    }

    #[test]
    fn marginals_by_brute_force_summation() {
        // Independent re-derivation: sum f over the slab {i_j = 1} directly.
        let f = two_level_positive_cov();
        for j in 0..3 {
            let direct: BigRational = Outcome::all(3)
                .filter(|o| o.bit(j))
                .map(|o| f.prob(o).clone())
                .sum();
            assert_eq!(&direct, f.marginal_means().get(j));
        }
    }

    #[test]
    fn covariance_of_first_pair_is_positive() {
        let f = two_level_positive_cov();
        assert_eq!(f.covariance(0, 1), r(1, 25));
        assert_eq!(f.covariance(0, 2), r(0, 1) - r(4, 25) + r(0, 1));
        assert!(f.covariance(0, 2) < BigRational::from_int(0));
    }

    #[test]
    fn sum_pmf_and_cross_moments() {
        let f = two_level_positive_cov();
        let s = f.sum_pmf();
        assert_eq!(s.values(), &[r(0, 1), r(4, 5), r(1, 5), r(0, 1)]);
        assert_eq!(s.mean(), r(6, 5));
        // E[S(S−1)]/2 against the pairwise second-moment sum.
        let pairwise: BigRational =
            f.second_moment(0, 1) + f.second_moment(0, 2) + f.second_moment(1, 2);
        assert_eq!(f.cross_moment_sum(), pairwise);
        assert_eq!(f.cross_moment_sum(), r(1, 5));
    }

    #[test]
    fn sum_minimal_distribution_matches_observed_sum() {
        let f = two_level_positive_cov();
        assert_eq!(f.sum_pmf(), s_min(r(6, 5), 3).unwrap());
    }

    #[test]
    fn s_min_point_mass_at_integer_mean() {
        let s = s_min(2.0f64, 4).unwrap();
        assert_eq!(s.point_mass_at(0.0), Some(2));
        let s = s_min(0.3f64, 5).unwrap();
        assert!((s.prob(0) - 0.7).abs() < 1e-15);
        assert!((s.prob(1) - 0.3).abs() < 1e-15);
        assert_eq!(s_min(r(6, 5), 3).unwrap().point_mass_at(0.0), None);
    }

    #[test]
    fn stop_loss_values() {
        let s = s_min(1.5f64, 3).unwrap();
        assert!((s.stop_loss(0) - 1.5).abs() < 1e-15);
        assert!((s.stop_loss(1) - 0.5).abs() < 1e-15);
        assert_eq!(s.stop_loss(2), 0.0);
    }

    #[test]
    fn product_pmf_factorizes() {
        let p = Marginals::new(vec![r(1, 2), r(1, 3)]).unwrap();
        let f = Pmf::product(&p).unwrap();
        assert_eq!(f.prob(Outcome::from_key("11", 2).unwrap()), &r(1, 6));
        assert_eq!(f.prob(Outcome::from_key("00", 2).unwrap()), &r(1, 3));
        assert_eq!(f.marginal_means(), p);
        assert_eq!(f.covariance(0, 1), r(0, 1));
    }

    #[test]
    fn frechet_lower_small_total_mean() {
        let p = Marginals::new(vec![r(1, 2), r(1, 2)]).unwrap();
        assert!(frechet_lower_is_pmf(&p));
        let f = frechet_lower_pmf(&p).unwrap();
        assert_eq!(f.prob(Outcome::from_index(0)), &r(0, 1));
        assert_eq!(f.prob(Outcome::from_key("10", 2).unwrap()), &r(1, 2));
        assert_eq!(f.prob(Outcome::from_key("01", 2).unwrap()), &r(1, 2));
        assert_eq!(f.marginal_means(), p);
    }

    #[test]
    fn frechet_lower_large_total_mean_mirrors() {
        let p = Marginals::new(vec![r(4, 5), r(9, 10), r(7, 10)]).unwrap();
        // p_• = 2.4 ≥ d−1 = 2.
        assert!(frechet_lower_is_pmf(&p));
        let f = frechet_lower_pmf(&p).unwrap();
        assert_eq!(f.marginal_means(), p);
        assert_eq!(f.prob(Outcome::from_key("111", 3).unwrap()), &r(2, 5));
        assert_eq!(f.prob(Outcome::from_key("011", 3).unwrap()), &r(1, 5));
        // Support sits on the top two levels.
        assert!(f.support().all(|(o, _)| o.level() >= 2));
    }

    #[test]
    fn frechet_lower_rejects_middle_regime() {
        let p = Marginals::new(vec![r(1, 2); 3]).unwrap();
        assert!(!frechet_lower_is_pmf(&p));
        assert!(frechet_lower_pmf(&p).is_err());
    }

    #[test]
    fn marginalize_sums_over_dropped_coordinates() {
        let f = two_level_positive_cov();
        let g = f.marginalize(&[0, 1]).unwrap();
        assert_eq!(g.prob(Outcome::from_key("00", 2).unwrap()), &r(2, 5));
        assert_eq!(g.prob(Outcome::from_key("10", 2).unwrap()), &r(1, 5));
        assert_eq!(g.prob(Outcome::from_key("11", 2).unwrap()), &r(1, 5));
        assert!(f.marginalize(&[]).is_err());
        assert!(f.marginalize(&[0, 3]).is_err());
        assert!(f.marginalize(&[1, 0]).is_err());
    }

    #[test]
    fn entropy_reference_values() {
        let p = Marginals::new(vec![0.5f64, 0.5]).unwrap();
        let f = Pmf::product(&p).unwrap();
        assert!((f.entropy() - 2.0 * std::f64::consts::LN_2).abs() < 1e-14);
        let point = Pmf::<f64>::point_mass(3, Outcome::from_index(5)).unwrap();
        assert_eq!(point.entropy(), 0.0);
    }

    #[test]
    fn mix_and_permute() {
        let p = Marginals::new(vec![r(2, 5); 3]).unwrap();
        let f = two_level_positive_cov();
        let g = Pmf::product(&p).unwrap();
        let h = f.mix(&g, r(1, 2)).unwrap();
        assert_eq!(h.marginal_means(), p);
        let perm = f.permute(&[2, 0, 1]).unwrap();
        // Coordinate 0 of the permuted pmf is old coordinate 2.
        assert_eq!(perm.marginal_means().as_slice(), f.marginal_means().as_slice());
        assert_eq!(
            perm.prob(Outcome::from_key("100", 3).unwrap()),
            f.prob(Outcome::from_key("001", 3).unwrap())
        );
    }

    #[test]
    fn float_rational_round_trip_is_lossless() {
        let p = Marginals::new(vec![0.35f64, 0.45, 0.5, 0.7]).unwrap();
        let f = Pmf::product(&p).unwrap();
        let back = f.to_rational().to_f64();
        assert_eq!(f.probs(), back.probs());
    }
}
