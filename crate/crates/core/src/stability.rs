//! Strong Rayleigh verdicts for multivariate Bernoulli pmfs.
//!
//! A pmf is strongly Rayleigh when its multi-affine generating polynomial
//! `P(z) = Σ_o f(o) ∏_{j∈o} z_j` is stable (no root with all coordinates in
//! the open upper half plane). For real multi-affine polynomials this is
//! equivalent to the pairwise criterion
//! `Δ_{jk}(x) = ∂_j P(x) ∂_k P(x) − ∂_j∂_k P(x) P(x) ≥ 0` for all real `x`,
//! which the verdict either certifies through a recognized structural route
//! or attacks numerically with a seeded multistart search, confirming any
//! candidate violation in exact rational arithmetic before reporting it.

use num::rational::BigRational;
use num::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::json::AnyPmf;
use crate::maxent::{self, FamilyMode};
use crate::outcome::{check_dimension, Outcome};
use crate::pmf::Pmf;
use crate::scalar::Scalar;
use crate::sturm::RatPoly;

/// A float pairwise gap below `−NEGATIVE_GAP_THRESHOLD` is treated as a
/// candidate violation and re-evaluated exactly.
pub const NEGATIVE_GAP_THRESHOLD: f64 = 1e-9;

/// Imaginary parts below this bound count as zero in the floating
/// companion-matrix cross-check of real-rootedness.
pub const EIGENVALUE_IMAG_TOL: f64 = 1e-9;

/// Dimension bound for the falsification search (the certification routes
/// have no extra bound beyond outcome indexing).
pub const SEARCH_DIMENSION_BOUND: usize = 8;

/// Tolerance for recognizing a conditional Bernoulli pmf by re-solving the
/// family from its own marginals.
pub const CB_RECOGNITION_TOL: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Multi-affine polynomials
// ---------------------------------------------------------------------------

/// A real or rational multi-affine polynomial in `d` variables:
/// `coeffs[S] · ∏_{j∈S} z_j` summed over subsets encoded as outcome indices.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiAffinePoly<T> {
    d: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> MultiAffinePoly<T> {
    pub fn new(d: usize, coeffs: Vec<T>) -> Result<Self> {
        check_dimension(d)?;
        if coeffs.len() != 1 << d {
            return Err(Error::BadLength { got: coeffs.len(), expected: 1 << d });
        }
        Ok(MultiAffinePoly { d, coeffs })
    }

    /// Generating polynomial of a pmf.
    pub fn from_pmf(f: &Pmf<T>) -> Self {
        MultiAffinePoly { d: f.d(), coeffs: f.probs().to_vec() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, o: Outcome) -> &T {
        &self.coeffs[o.index()]
    }

    /// Evaluates at a real point by folding one variable at a time.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        if x.len() != self.d {
            return Err(Error::BadLength { got: x.len(), expected: self.d });
        }
        let mut buf = self.coeffs.clone();
        let mut len = buf.len();
        for xj in x {
            len /= 2;
            for s in 0..len {
                buf[s] = buf[2 * s].clone() + xj.clone() * buf[2 * s + 1].clone();
            }
        }
        Ok(buf[0].clone())
    }

    /// Partial derivative in variable `j` (still represented in `d`
    /// variables; `z_j` simply no longer occurs).
    pub fn partial_derivative(&self, j: usize) -> Result<Self> {
        if j >= self.d {
            return Err(Error::CoordinateOutOfRange { index: j, d: self.d });
        }
        let bit = 1usize << j;
        let coeffs = (0..self.coeffs.len())
            .map(|s| {
                if s & bit == 0 {
                    self.coeffs[s | bit].clone()
                } else {
                    T::zero()
                }
            })
            .collect();
        Ok(MultiAffinePoly { d: self.d, coeffs })
    }

    /// Substitutes `z_j ↦ a_j z_j` with strictly positive factors, an
    /// operation preserving stability.
    pub fn scale_variables(&self, factors: &[T]) -> Result<Self> {
        if factors.len() != self.d {
            return Err(Error::BadLength { got: factors.len(), expected: self.d });
        }
        for (j, a) in factors.iter().enumerate() {
            if !a.to_f64().is_finite() || a.to_f64() <= 0.0 {
                return Err(Error::NonpositiveScale {
                    coordinate: j,
                    value: a.to_string(),
                });
            }
        }
        let coeffs = (0..self.coeffs.len())
            .map(|s| {
                let mut c = self.coeffs[s].clone();
                for (j, a) in factors.iter().enumerate() {
                    if s >> j & 1 == 1 {
                        c = c * a.clone();
                    }
                }
                c
            })
            .collect();
        Ok(MultiAffinePoly { d: self.d, coeffs })
    }
}

/// The pairwise Rayleigh gap
/// `∂_{j1}P(x) ∂_{j2}P(x) − ∂_{j1}∂_{j2}P(x) P(x)` at a real point.
/// Nonnegative everywhere for stable `P`; at `x = 1` it equals minus the
/// covariance of the coordinate pair.
pub fn rayleigh_gap<T: Scalar>(
    poly: &MultiAffinePoly<T>,
    j1: usize,
    j2: usize,
    x: &[T],
) -> Result<T> {
    if j1 == j2 {
        return Err(Error::PairNotDistinct(j1));
    }
    let d1 = poly.partial_derivative(j1)?;
    let d2 = poly.partial_derivative(j2)?;
    let d12 = d1.partial_derivative(j2)?;
    Ok(d1.evaluate(x)? * d2.evaluate(x)? - d12.evaluate(x)? * poly.evaluate(x)?)
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// Structural certification routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableRoute {
    /// Support within levels `{0, 1}` or `{d−1, d}`: the generating
    /// polynomial (or its coordinate reversal) is affine with nonnegative
    /// coefficients.
    Linear,
    /// Exactly a product of its own marginals (independent coordinates).
    Product,
    /// Exchangeable with a real-rooted sum polynomial, certified by an
    /// exact Sturm sequence.
    SymmetricRealRooted,
    /// Recognized as a conditional Bernoulli pmf by re-solving the family
    /// from its own marginals.
    ConditionalBernoulli,
}

impl std::fmt::Display for StableRoute {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            StableRoute::Linear => "linear",
            StableRoute::Product => "product",
            StableRoute::SymmetricRealRooted => "symmetric-real-rooted",
            StableRoute::ConditionalBernoulli => "conditional-bernoulli",
        };
        write!(f, "{name}")
    }
}

/// Summary of an unsuccessful falsification search.
#[derive(Clone, Debug)]
pub struct SearchStats {
    pub pairs: usize,
    pub starts_per_pair: usize,
    pub evaluations: u64,
    /// Smallest float gap seen anywhere.
    pub min_gap: f64,
    pub min_pair: (usize, usize),
    pub min_x: Vec<f64>,
    /// Float candidates below the threshold that exact re-evaluation
    /// rejected as rounding artifacts.
    pub exact_rejections: usize,
}

/// A certified violation of the pairwise Rayleigh inequality.
#[derive(Clone, Debug)]
pub struct GapWitness {
    pub j1: usize,
    pub j2: usize,
    pub x: Vec<f64>,
    /// Float gap at the witness point.
    pub gap: f64,
    /// Exact gap at the same point (coordinates converted losslessly);
    /// strictly negative.
    pub exact_gap: BigRational,
}

/// Verdict of the strong Rayleigh check.
#[derive(Clone, Debug)]
pub enum SrVerdict {
    /// Provably stable via a structural route.
    StableCertified { route: StableRoute },
    /// The search found no violation; not a proof of stability.
    LikelyStable { stats: SearchStats },
    /// Provably not stable: an exact negative pairwise gap.
    NotStable { witness: GapWitness },
}

impl SrVerdict {
    pub fn is_stable_certified(&self) -> bool {
        matches!(self, SrVerdict::StableCertified { .. })
    }

    pub fn is_not_stable(&self) -> bool {
        matches!(self, SrVerdict::NotStable { .. })
    }
}

/// Configuration of the falsification search. All randomness is derived
/// from the seed, so verdicts are reproducible.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    /// Multistart descents per coordinate pair.
    pub starts: usize,
    /// Half-width of the box from which starts are drawn.
    pub radius: f64,
    /// Pattern-descent iterations per start.
    pub descent_steps: usize,
}

impl SearchConfig {
    pub fn seeded(seed: u64) -> Self {
        SearchConfig { seed, starts: 64, radius: 10.0, descent_steps: 80 }
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Decides strong Rayleigh-ness of a pmf: structural certification when the
/// pmf is linear-type, a product, exchangeable with real-rooted sum, or a
/// recognized conditional Bernoulli; otherwise a seeded falsification
/// search whose candidate violations are confirmed exactly.
pub fn is_strongly_rayleigh(f: &AnyPmf, config: &SearchConfig) -> Result<SrVerdict> {
    let fe = f.as_rational();
    let d = fe.d();

    // Route 1: support within levels {0,1} or {d−1,d}.
    let levels: Vec<usize> = fe.support().map(|(o, _)| o.level()).collect();
    if levels.iter().all(|&l| l <= 1) || levels.iter().all(|&l| l + 1 >= d) {
        return Ok(SrVerdict::StableCertified { route: StableRoute::Linear });
    }

    // Route 2: exact product of own marginals. Exactness matters: products
    // sit on the boundary of stability (gap identically zero), so an
    // approximate match must not certify.
    let product = Pmf::product(&fe.marginal_means())?;
    if fe == product {
        return Ok(SrVerdict::StableCertified { route: StableRoute::Product });
    }

    // Route 3: exchangeable pmfs are stable iff their sum polynomial is
    // real-rooted. The Sturm sequence decides exactly; the floating
    // companion-matrix eigenvalue check corroborates but cannot overrule.
    if is_exchangeable(&fe) {
        let sum = fe.sum_pmf();
        let poly = RatPoly::new(sum.values().to_vec());
        let sturm_real = poly.real_rooted();
        let _eig_real = companion_real_rooted(
            &sum.values().iter().map(|v| v.to_f64()).collect::<Vec<_>>(),
            EIGENVALUE_IMAG_TOL,
        );
        if sturm_real {
            return Ok(SrVerdict::StableCertified {
                route: StableRoute::SymmetricRealRooted,
            });
        }
        // Not real-rooted: provably unstable (the diagonal restriction
        // already fails), but fall through so the verdict carries a
        // concrete pairwise witness.
    }

    let ff = f.as_float();

    // Route 4: conditional Bernoulli recognition (numerical).
    if let Some(route) = recognize_conditional_bernoulli(&ff, &fe) {
        return Ok(SrVerdict::StableCertified { route });
    }

    // Route 5: falsification search.
    falsify(&ff, &fe, config)
}

fn is_exchangeable(f: &Pmf<BigRational>) -> bool {
    let d = f.d();
    let mut level_value: Vec<Option<&BigRational>> = vec![None; d + 1];
    for o in Outcome::all(d) {
        let v = f.prob(o);
        match level_value[o.level()] {
            None => level_value[o.level()] = Some(v),
            Some(seen) => {
                if seen != v {
                    return false;
                }
            }
        }
    }
    true
}

/// Floating cross-check of real-rootedness via companion-matrix
/// eigenvalues: true when every eigenvalue's imaginary part is within
/// `tol`. Degree at most one is trivially real-rooted.
pub fn companion_real_rooted(coeffs: &[f64], tol: f64) -> bool {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last() == Some(&0.0) {
        coeffs.pop();
    }
    if coeffs.len() <= 2 {
        return true;
    }
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let companion = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion
        .complex_eigenvalues()
        .iter()
        .all(|z| z.im.abs() <= tol)
}

/// Attempts to recognize `f` as a conditional Bernoulli pmf: reads the
/// support mode off the exact support, re-solves the family from `f`'s own
/// marginal means, and accepts on agreement within [`CB_RECOGNITION_TOL`].
fn recognize_conditional_bernoulli(
    ff: &Pmf<f64>,
    fe: &Pmf<BigRational>,
) -> Option<StableRoute> {
    let d = ff.d();
    if d > maxent::SOLVER_DIMENSION_BOUND {
        return None;
    }
    let p = ff.marginal_means();
    if p.as_slice().iter().any(|&v| v < 1e-12 || v > 1.0 - 1e-12) {
        return None;
    }
    let mut levels: Vec<usize> = fe.support().map(|(o, _)| o.level()).collect();
    levels.sort_unstable();
    levels.dedup();
    let mode = match levels.as_slice() {
        [m] => FamilyMode::Level { m: *m },
        [m, n] if *n == m + 1 => FamilyMode::TwoLevel { m: *m },
        _ => return None,
    };
    let solved = maxent::solve_max_entropy_with(&p, maxent::DEFAULT_TOL, Some(mode)).ok()?;
    let close = ff
        .probs()
        .iter()
        .zip(solved.pmf.probs())
        .all(|(a, b)| (a - b).abs() <= CB_RECOGNITION_TOL);
    close.then_some(StableRoute::ConditionalBernoulli)
}

// ---------------------------------------------------------------------------
// Falsification search
// ---------------------------------------------------------------------------

/// Precomputed derivative polynomials of one coordinate pair.
struct PairGap {
    p: MultiAffinePoly<f64>,
    d1: MultiAffinePoly<f64>,
    d2: MultiAffinePoly<f64>,
    d12: MultiAffinePoly<f64>,
}

impl PairGap {
    fn new(poly: &MultiAffinePoly<f64>, j1: usize, j2: usize) -> Result<Self> {
        let d1 = poly.partial_derivative(j1)?;
        let d2 = poly.partial_derivative(j2)?;
        let d12 = d1.partial_derivative(j2)?;
        Ok(PairGap { p: poly.clone(), d1, d2, d12 })
    }

    fn gap(&self, x: &[f64]) -> f64 {
        let e = |p: &MultiAffinePoly<f64>| p.evaluate(x).expect("length checked");
        e(&self.d1) * e(&self.d2) - e(&self.d12) * e(&self.p)
    }
}

fn falsify(ff: &Pmf<f64>, fe: &Pmf<BigRational>, config: &SearchConfig) -> Result<SrVerdict> {
    let d = ff.d();
    if d > SEARCH_DIMENSION_BOUND {
        return Err(Error::DimensionBound {
            d,
            bound: SEARCH_DIMENSION_BOUND,
            operation: "stability falsification search",
        });
    }
    debug_assert!(d >= 2, "univariate pmfs are certified by the linear route");
    let poly = MultiAffinePoly::from_pmf(ff);
    let exact_poly = MultiAffinePoly::from_pmf(fe);
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut stats = SearchStats {
        pairs: 0,
        starts_per_pair: config.starts,
        evaluations: 0,
        min_gap: f64::INFINITY,
        min_pair: (0, 0),
        min_x: vec![1.0; d],
        exact_rejections: 0,
    };
    for j1 in 0..d {
        for j2 in j1 + 1..d {
            stats.pairs += 1;
            let pair = PairGap::new(&poly, j1, j2)?;
            let mut best_x: Option<Vec<f64>> = None;
            let mut best_gap = f64::INFINITY;
            let mut consider = |x: &[f64], gap: f64, stats: &mut SearchStats| {
                stats.evaluations += 1;
                if gap < stats.min_gap {
                    stats.min_gap = gap;
                    stats.min_pair = (j1, j2);
                    stats.min_x = x.to_vec();
                }
                if gap < best_gap {
                    best_gap = gap;
                    best_x = Some(x.to_vec());
                }
            };

            // Lattice sweep over small integer points.
            let grid: &[f64] =
                if d <= 4 { &[-2.0, -1.0, 0.0, 1.0, 2.0] } else { &[-1.0, 0.0, 1.0] };
            let mut x = vec![0.0; d];
            sweep_lattice(&pair, grid, &mut x, 0, &mut consider, &mut stats);

            // Magnitude sweeps along axes, the diagonal, and seeded
            // random directions, out to coordinates of size 1e3.
            let magnitudes = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0];
            for &mag in &magnitudes {
                for j in 0..d {
                    for sign in [-1.0, 1.0] {
                        let mut x = vec![0.0; d];
                        x[j] = sign * mag;
                        consider(&x, pair.gap(&x), &mut stats);
                    }
                }
                for sign in [-1.0, 1.0] {
                    let x = vec![sign * mag; d];
                    consider(&x, pair.gap(&x), &mut stats);
                }
                for _ in 0..4 {
                    let mut x: Vec<f64> =
                        (0..d).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
                    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-9);
                    for v in x.iter_mut() {
                        *v *= mag / norm;
                    }
                    consider(&x, pair.gap(&x), &mut stats);
                }
            }

            // Multistart pattern descent.
            for _ in 0..config.starts {
                let mut x: Vec<f64> = (0..d)
                    .map(|_| (rng.random::<f64>() * 2.0 - 1.0) * config.radius)
                    .collect();
                let mut fx = pair.gap(&x);
                consider(&x, fx, &mut stats);
                let mut step = config.radius / 4.0;
                for _ in 0..config.descent_steps {
                    let mut improved = false;
                    for j in 0..d {
                        for sign in [1.0, -1.0] {
                            let mut trial = x.clone();
                            trial[j] += sign * step;
                            let ft = pair.gap(&trial);
                            consider(&trial, ft, &mut stats);
                            if ft < fx {
                                x = trial;
                                fx = ft;
                                improved = true;
                            }
                        }
                    }
                    if !improved {
                        step *= 0.5;
                        if step < 1e-7 {
                            break;
                        }
                    }
                }
            }

            if best_gap < -NEGATIVE_GAP_THRESHOLD {
                let x = best_x.expect("a best point accompanies a finite best gap");
                match confirm_exact(&exact_poly, j1, j2, &x)? {
                    Some(exact_gap) => {
                        return Ok(SrVerdict::NotStable {
                            witness: GapWitness { j1, j2, x, gap: best_gap, exact_gap },
                        });
                    }
                    None => stats.exact_rejections += 1,
                }
            }
        }
    }
    Ok(SrVerdict::LikelyStable { stats })
}

fn sweep_lattice(
    pair: &PairGap,
    grid: &[f64],
    x: &mut Vec<f64>,
    depth: usize,
    consider: &mut impl FnMut(&[f64], f64, &mut SearchStats),
    stats: &mut SearchStats,
) {
    if depth == x.len() {
        let gap = pair.gap(x);
        consider(x, gap, stats);
        return;
    }
    for &v in grid {
        x[depth] = v;
        sweep_lattice(pair, grid, x, depth + 1, consider, stats);
    }
}

/// Re-evaluates the pairwise gap exactly at the float point (converted
/// losslessly). Returns the exact gap when strictly negative.
fn confirm_exact(
    exact_poly: &MultiAffinePoly<BigRational>,
    j1: usize,
    j2: usize,
    x: &[f64],
) -> Result<Option<BigRational>> {
    let xe: Vec<BigRational> = x.iter().map(|v| v.to_exact()).collect();
    let gap = rayleigh_gap(exact_poly, j1, j2, &xe)?;
    Ok(gap.is_negative().then_some(gap))
}

// ---------------------------------------------------------------------------
// Elementary-symmetric-polynomial identity
// ---------------------------------------------------------------------------

/// Verifies, by exact comparison of coefficient sets, the recursion that
/// extends elementary symmetric polynomials by one variable:
/// `E_{d+1, m+1} = E_{d, m+1} + z_{d+1} · E_{d, m}`.
pub fn esp_identity_check(d: usize, m: usize) -> Result<bool> {
    check_dimension(d + 1)?;
    if m > d {
        return Err(Error::CoordinateOutOfRange { index: m, d: d + 1 });
    }
    use std::collections::BTreeSet;
    let subsets = |vars: usize, size: usize| -> BTreeSet<usize> {
        (0..1usize << vars)
            .filter(|s| s.count_ones() as usize == size)
            .collect()
    };
    // Left side: (m+1)-subsets avoiding the new variable, plus m-subsets
    // of the old variables joined with it.
    let new_bit = 1usize << d;
    let mut left: BTreeSet<usize> = subsets(d, m + 1);
    for s in subsets(d, m) {
        let joined = s | new_bit;
        if !left.insert(joined) {
            return Ok(false); // coefficient collision: not multi-affine 0/1
        }
    }
    let right = subsets(d + 1, m + 1);
    Ok(left == right)
}
