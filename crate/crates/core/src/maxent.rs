//! Maximum-entropy pmfs with prescribed marginal means and minimally
//! concentrated sum, i.e. conditional Bernoulli families: on the support
//! the probability of an outcome is proportional to a product of
//! per-coordinate weights `w_j`.
//!
//! The solver runs Newton iteration on the log-odds `θ_j = ln w_j`, with
//! the Jacobian (a coordinate covariance matrix) computed by enumeration.
//! When the target mean total is an integer the family lives on a single
//! level, the parametrization gains the gauge freedom `θ ↦ θ + c·1`, and
//! the iteration fixes `Σ θ_j = 0` while projecting the target onto the
//! reachable manifold.

use nalgebra::{DMatrix, DVector};
use num::rational::BigRational;
use num::{BigInt, Signed};

use crate::error::{Error, Result};
use crate::outcome::{check_dimension, Outcome};
use crate::pmf::{Marginals, Pmf};
use crate::scalar::Scalar;
use crate::stability::MultiAffinePoly;

/// Default convergence tolerance on the marginal residual (sup norm).
pub const DEFAULT_TOL: f64 = 1e-10;

/// Iteration cap for the Newton solver.
pub const MAX_ITERATIONS: usize = 200;

/// A mean total within this distance of an integer selects the
/// single-level family.
pub const INTEGER_MODE_TOL: f64 = 1e-10;

/// Dimension bound for the solver (Jacobian by outcome enumeration).
pub const SOLVER_DIMENSION_BOUND: usize = 10;

/// Tolerance on the log-coefficient spread when asserting that a solved
/// pmf is proportional to a weight product on its support.
pub const PRODUCT_FORM_TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Elementary symmetric polynomials
// ---------------------------------------------------------------------------

/// All elementary symmetric polynomials `e_0(w), ..., e_n(w)` by the
/// cancellation-free row recursion `e_m^{(k)} = e_m^{(k-1)} + w_k e_{m-1}^{(k-1)}`.
pub fn esp<T: Scalar>(w: &[T]) -> Vec<T> {
    let mut e = vec![T::zero(); w.len() + 1];
    e[0] = T::one();
    for (k, wk) in w.iter().enumerate() {
        for m in (1..=k + 1).rev() {
            e[m] = e[m].clone() + wk.clone() * e[m - 1].clone();
        }
    }
    e
}

/// Elementary symmetric polynomials of `w` with coordinate `j` removed.
/// Recomputed on the reduced vector rather than divided out, so no
/// cancellation occurs.
pub fn esp_drop_one<T: Scalar>(w: &[T], j: usize) -> Result<Vec<T>> {
    if j >= w.len() {
        return Err(Error::CoordinateOutOfRange { index: j, d: w.len() });
    }
    let reduced: Vec<T> = w
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .map(|(_, v)| v.clone())
        .collect();
    Ok(esp(&reduced))
}

fn esp_at<T: Scalar>(e: &[T], i: isize) -> T {
    if i < 0 || i as usize >= e.len() {
        T::zero()
    } else {
        e[i as usize].clone()
    }
}

// ---------------------------------------------------------------------------
// Odds parametrization
// ---------------------------------------------------------------------------

/// A vector of success probabilities `π_j ∈ (0,1)` together with its
/// derived odds `w_j = π_j/(1−π_j)` and log-odds `θ_j = ln w_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct OddsVector {
    pi: Vec<f64>,
}

impl OddsVector {
    pub fn from_pi(pi: Vec<f64>) -> Result<Self> {
        check_dimension(pi.len())?;
        for (j, &v) in pi.iter().enumerate() {
            if !(v > 0.0 && v < 1.0) {
                let err = if (0.0..=1.0).contains(&v) {
                    Error::BoundaryMarginal { coordinate: j, value: v.to_string() }
                } else {
                    Error::MarginalOutOfRange { coordinate: j, value: v.to_string() }
                };
                return Err(err);
            }
        }
        Ok(OddsVector { pi })
    }

    pub fn from_theta(theta: &[f64]) -> Self {
        OddsVector { pi: theta.iter().map(|t| 1.0 / (1.0 + (-t).exp())).collect() }
    }

    pub fn from_w(w: &[f64]) -> Result<Self> {
        for (j, &v) in w.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonpositiveScale { coordinate: j, value: v.to_string() });
            }
        }
        Ok(OddsVector { pi: w.iter().map(|w| w / (1.0 + w)).collect() })
    }

    pub fn d(&self) -> usize {
        self.pi.len()
    }

    pub fn pi(&self) -> &[f64] {
        &self.pi
    }

    pub fn w(&self) -> Vec<f64> {
        self.pi.iter().map(|p| p / (1.0 - p)).collect()
    }

    pub fn theta(&self) -> Vec<f64> {
        self.pi.iter().map(|p| (p / (1.0 - p)).ln()).collect()
    }
}

// ---------------------------------------------------------------------------
// Conditional Bernoulli families
// ---------------------------------------------------------------------------

/// Support shape of a conditional Bernoulli family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyMode {
    /// All mass on the single level `m` (integer mean total).
    Level { m: usize },
    /// Mass on the adjacent levels `m` and `m + 1` (fractional mean total).
    TwoLevel { m: usize },
}

impl FamilyMode {
    pub fn levels(&self) -> Vec<usize> {
        match *self {
            FamilyMode::Level { m } => vec![m],
            FamilyMode::TwoLevel { m } => vec![m, m + 1],
        }
    }

    pub fn base_level(&self) -> usize {
        match *self {
            FamilyMode::Level { m } | FamilyMode::TwoLevel { m } => m,
        }
    }
}

impl std::fmt::Display for FamilyMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            FamilyMode::Level { m } => write!(f, "level {m}"),
            FamilyMode::TwoLevel { m } => write!(f, "levels {m} and {}", m + 1),
        }
    }
}

/// Evaluates the family pmf for log-odds `theta` in log space (immune to
/// overflow for extreme odds).
fn family_pmf(theta: &[f64], mode: FamilyMode) -> Result<Pmf<f64>> {
    let d = theta.len();
    check_dimension(d)?;
    let levels = mode.levels();
    if levels.iter().any(|&m| m > d) {
        return Err(Error::IncompatibleMode {
            p_bullet: f64::NAN,
            mode: format!("{mode} exceeds dimension {d}"),
        });
    }
    let mut scores = vec![f64::NEG_INFINITY; 1 << d];
    let mut max_score = f64::NEG_INFINITY;
    for o in Outcome::all(d) {
        if !levels.contains(&o.level()) {
            continue;
        }
        let s: f64 = (0..d).filter(|&j| o.bit(j)).map(|j| theta[j]).sum();
        scores[o.index()] = s;
        max_score = max_score.max(s);
    }
    let mut probs = vec![0.0; 1 << d];
    let mut total = 0.0;
    for (o, s) in scores.iter().enumerate() {
        if s.is_finite() {
            probs[o] = (s - max_score).exp();
            total += probs[o];
        }
    }
    for v in probs.iter_mut() {
        *v /= total;
    }
    Pmf::new(d, probs)
}

/// Conditional Bernoulli pmf on the single level `m`:
/// `f(o) ∝ ∏_{j ∈ o} w_j` for `|o| = m`.
pub fn cond_bernoulli_pmf(odds: &OddsVector, m: usize) -> Result<Pmf<f64>> {
    family_pmf(&odds.theta(), FamilyMode::Level { m })
}

/// Conditional Bernoulli pmf on the two adjacent levels `m`, `m + 1`:
/// `f(o) ∝ ∏_{j ∈ o} w_j` for `|o| ∈ {m, m+1}`.
pub fn cond_bernoulli_pmf_plus(odds: &OddsVector, m: usize) -> Result<Pmf<f64>> {
    family_pmf(&odds.theta(), FamilyMode::TwoLevel { m })
}

/// Marginal means of the conditional Bernoulli family via elementary
/// symmetric polynomials: for the single level,
/// `p_j = w_j e_{m−1}(w_{−j}) / e_m(w)`; for two levels,
/// `p_j = w_j (e_{m−1}(w_{−j}) + e_m(w_{−j})) / (e_m(w) + e_{m+1}(w))`.
pub fn cb_marginals(odds: &OddsVector, mode: FamilyMode) -> Result<Marginals<f64>> {
    let d = odds.d();
    if mode.levels().iter().any(|&m| m > d) {
        return Err(Error::IncompatibleMode {
            p_bullet: f64::NAN,
            mode: format!("{mode} exceeds dimension {d}"),
        });
    }
    let w = odds.w();
    let e = esp(&w);
    let m = mode.base_level() as isize;
    let denom = match mode {
        FamilyMode::Level { .. } => esp_at(&e, m),
        FamilyMode::TwoLevel { .. } => esp_at(&e, m) + esp_at(&e, m + 1),
    };
    let mut p = Vec::with_capacity(d);
    for j in 0..d {
        let ej = esp_drop_one(&w, j)?;
        let num = match mode {
            FamilyMode::Level { .. } => w[j] * esp_at(&ej, m - 1),
            FamilyMode::TwoLevel { .. } => w[j] * (esp_at(&ej, m - 1) + esp_at(&ej, m)),
        };
        p.push(num / denom);
    }
    Marginals::new(p)
}

// ---------------------------------------------------------------------------
// Newton solver
// ---------------------------------------------------------------------------

/// Output of the maximum-entropy solve.
#[derive(Clone, Debug)]
pub struct MaxEntResult {
    pub pmf: Pmf<f64>,
    pub odds: OddsVector,
    pub mode: FamilyMode,
    /// Sup-norm distance of the achieved marginal means from the input.
    pub residual: f64,
    pub iterations: usize,
}

/// Solves for the maximum-entropy pmf with marginal means `p` among all
/// pmfs whose sum is as concentrated as those means allow. Mode is chosen
/// from the mean total: within [`INTEGER_MODE_TOL`] of an integer `m` the
/// support is the single level `m`, otherwise the levels `⌊p•⌋, ⌊p•⌋+1`.
pub fn solve_max_entropy(p: &Marginals<f64>, tol: f64) -> Result<MaxEntResult> {
    solve_max_entropy_with(p, tol, None)
}

/// As [`solve_max_entropy`], with an explicit support-mode override
/// (used when re-deriving the family from a pmf whose support is known).
pub fn solve_max_entropy_with(
    p: &Marginals<f64>,
    tol: f64,
    mode: Option<FamilyMode>,
) -> Result<MaxEntResult> {
    let d = p.d();
    if d > SOLVER_DIMENSION_BOUND {
        return Err(Error::DimensionBound {
            d,
            bound: SOLVER_DIMENSION_BOUND,
            operation: "maximum-entropy solve",
        });
    }
    for j in 0..d {
        let v = *p.get(j);
        if !(v > 0.0 && v < 1.0) {
            let err = if (0.0..=1.0).contains(&v) {
                Error::BoundaryMarginal { coordinate: j, value: v.to_string() }
            } else {
                Error::MarginalOutOfRange { coordinate: j, value: v.to_string() }
            };
            return Err(err);
        }
    }
    let p_bullet = p.p_bullet();
    let mode = match mode {
        Some(m) => {
            validate_mode(p_bullet, d, m)?;
            m
        }
        None => {
            if (p_bullet - p_bullet.round()).abs() <= INTEGER_MODE_TOL {
                FamilyMode::Level { m: p_bullet.round() as usize }
            } else {
                FamilyMode::TwoLevel { m: p_bullet.floor() as usize }
            }
        }
    };
    // In single-level mode the achievable means always total exactly m;
    // spread the (tiny) excess evenly to land on the reachable manifold.
    let target: Vec<f64> = match mode {
        FamilyMode::Level { m } => {
            let shift = (p_bullet - m as f64) / d as f64;
            p.as_slice().iter().map(|v| v - shift).collect()
        }
        FamilyMode::TwoLevel { .. } => p.as_slice().to_vec(),
    };
    for (j, &v) in target.iter().enumerate() {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::BoundaryMarginal { coordinate: j, value: v.to_string() });
        }
    }
    let integer_mode = matches!(mode, FamilyMode::Level { .. });
    let mut theta: Vec<f64> = target.iter().map(|v| (v / (1.0 - v)).ln()).collect();
    if integer_mode {
        recenter(&mut theta);
    }
    let residual_of = |pmf: &Pmf<f64>| -> (Vec<f64>, f64) {
        let achieved = pmf.marginal_means();
        let r: Vec<f64> =
            (0..d).map(|j| achieved.get(j) - target[j]).collect();
        let norm = r.iter().fold(0.0f64, |m, v| m.max(f64::abs(*v)));
        (r, norm)
    };
    let mut pmf = family_pmf(&theta, mode)?;
    let (mut r, mut r_norm) = residual_of(&pmf);
    let mut iterations = 0;
    while r_norm > tol {
        if iterations >= MAX_ITERATIONS {
            return Err(Error::NonConvergence { residual: r_norm, iterations });
        }
        iterations += 1;
        let jac = jacobian(&pmf, integer_mode);
        let delta = jac
            .lu()
            .solve(&DVector::from_column_slice(&r))
            .ok_or(Error::NonConvergence { residual: r_norm, iterations })?;
        // Damped update: halve the step until the residual decreases.
        let mut accepted = false;
        let mut s = 1.0;
        for _ in 0..40 {
            let mut trial: Vec<f64> =
                theta.iter().zip(delta.iter()).map(|(t, dl)| t - s * dl).collect();
            if integer_mode {
                recenter(&mut trial);
            }
            let trial_pmf = family_pmf(&trial, mode)?;
            let (tr, tn) = residual_of(&trial_pmf);
            if tn < r_norm {
                theta = trial;
                pmf = trial_pmf;
                r = tr;
                r_norm = tn;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if !accepted {
            return Err(Error::NonConvergence { residual: r_norm, iterations });
        }
    }
    let achieved = pmf.marginal_means();
    let residual = (0..d)
        .map(|j| (achieved.get(j) - p.get(j)).abs())
        .fold(0.0f64, f64::max);
    Ok(MaxEntResult {
        pmf,
        odds: OddsVector::from_theta(&theta),
        mode,
        residual,
        iterations,
    })
}

fn validate_mode(p_bullet: f64, d: usize, mode: FamilyMode) -> Result<()> {
    let describe = |m: FamilyMode| m.to_string();
    match mode {
        FamilyMode::Level { m } => {
            if m == 0 || m >= d || (p_bullet - m as f64).abs() > 1e-6 {
                return Err(Error::IncompatibleMode { p_bullet, mode: describe(mode) });
            }
        }
        FamilyMode::TwoLevel { m } => {
            if m + 1 > d
                || p_bullet < m as f64 - 1e-6
                || p_bullet > (m + 1) as f64 + 1e-6
            {
                return Err(Error::IncompatibleMode { p_bullet, mode: describe(mode) });
            }
        }
    }
    Ok(())
}

fn recenter(theta: &mut [f64]) {
    let mean = theta.iter().sum::<f64>() / theta.len() as f64;
    for t in theta.iter_mut() {
        *t -= mean;
    }
}

/// Derivative of the marginal means with respect to the log-odds: the
/// coordinate covariance matrix of the family pmf, computed by outcome
/// enumeration. In single-level mode the all-ones direction spans the
/// kernel (gauge freedom), so a rank-one multiple of `11ᵀ` is added; the
/// residual is orthogonal to `1` there, leaving the solution unaffected.
fn jacobian(pmf: &Pmf<f64>, integer_mode: bool) -> DMatrix<f64> {
    let d = pmf.d();
    let a = pmf.marginal_means();
    let mut second = DMatrix::<f64>::zeros(d, d);
    for (o, q) in pmf.support() {
        for j in 0..d {
            if !o.bit(j) {
                continue;
            }
            for k in 0..d {
                if o.bit(k) {
                    second[(j, k)] += q;
                }
            }
        }
    }
    let fill = if integer_mode { 1.0 / d as f64 } else { 0.0 };
    DMatrix::from_fn(d, d, |j, k| second[(j, k)] - a.get(j) * a.get(k) + fill)
}

// ---------------------------------------------------------------------------
// Generating polynomial and the exchangeable closed form
// ---------------------------------------------------------------------------

/// Generating polynomial of a solved maximum-entropy pmf, after verifying
/// that the coefficients really are proportional to `∏_{j∈o} w_j` on the
/// support (log-coefficient spread at most [`PRODUCT_FORM_TOL`]).
pub fn maxent_pgf(result: &MaxEntResult) -> Result<MultiAffinePoly<f64>> {
    let theta = result.odds.theta();
    let mut min_log = f64::INFINITY;
    let mut max_log = f64::NEG_INFINITY;
    for (o, q) in result.pmf.support() {
        let score: f64 = (0..result.pmf.d()).filter(|&j| o.bit(j)).map(|j| theta[j]).sum();
        let log_ratio = q.ln() - score;
        min_log = min_log.min(log_ratio);
        max_log = max_log.max(log_ratio);
    }
    let spread = max_log - min_log;
    if !(spread <= PRODUCT_FORM_TOL) {
        return Err(Error::NotProductForm { spread, tol: PRODUCT_FORM_TOL });
    }
    Ok(MultiAffinePoly::from_pmf(&result.pmf))
}

/// Exact maximum-entropy pmf for equal marginal means `p` in dimension `d`:
/// exchangeable, supported on the levels `m = ⌊dp⌋` and `m + 1` with
/// per-outcome masses `(m + 1 − dp)/C(d,m)` and `(dp − m)/C(d,m+1)`.
pub fn exchangeable_sigma_pmf(d: usize, p: &BigRational) -> Result<Pmf<BigRational>> {
    check_dimension(d)?;
    if !(p.is_positive() && p < &BigRational::from_integer(1.into())) {
        return Err(Error::BoundaryMarginal { coordinate: 0, value: p.to_string() });
    }
    let p_bullet = BigRational::from_integer(d.into()) * p;
    let m = p_bullet.floor().to_integer();
    let m_usize: usize = usize::try_from(&m).expect("level fits usize");
    let lower_mass =
        BigRational::from_integer(m.clone() + BigInt::from(1)) - p_bullet.clone();
    let upper_mass = p_bullet - BigRational::from_integer(m);
    let mut entries: Vec<(Outcome, BigRational)> = Vec::new();
    if lower_mass.is_positive() {
        let c = binomial_rat(d, m_usize);
        for o in Outcome::with_level(d, m_usize) {
            entries.push((o, lower_mass.clone() / c.clone()));
        }
    }
    if upper_mass.is_positive() {
        let c = binomial_rat(d, m_usize + 1);
        for o in Outcome::with_level(d, m_usize + 1) {
            entries.push((o, upper_mass.clone() / c.clone()));
        }
    }
    Pmf::from_support(d, entries)
}

fn binomial_rat(d: usize, k: usize) -> BigRational {
    BigRational::from_integer(num::integer::binomial(BigInt::from(d), BigInt::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Ratio;

    fn rat(n: i64, d: i64) -> BigRational {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn esp_matches_direct_expansion() {
        let w = vec![1.0f64, 2.0, 3.0];
        assert_eq!(esp(&w), vec![1.0, 6.0, 11.0, 6.0]);
        let e = esp::<BigRational>(&[rat(1, 2), rat(1, 3)]);
        assert_eq!(e, vec![rat(1, 1), rat(5, 6), rat(1, 6)]);
    }

    #[test]
    fn esp_drop_one_satisfies_the_row_identity() {
        let w: Vec<BigRational> =
            [3, 5, 7, 11].iter().map(|&n| rat(n, 2)).collect();
        let e = esp(&w);
        for j in 0..w.len() {
            let ej = esp_drop_one(&w, j).unwrap();
            for m in 1..=w.len() {
                let rhs = esp_at(&ej, m as isize)
                    + w[j].clone() * esp_at(&ej, m as isize - 1);
                assert_eq!(e[m], rhs, "identity failed at j={j}, m={m}");
            }
        }
    }

    #[test]
    fn uniform_weights_give_uniform_level_pmf() {
        let odds = OddsVector::from_pi(vec![0.5; 4]).unwrap();
        let f = cond_bernoulli_pmf(&odds, 2).unwrap();
        for (o, q) in f.support() {
            assert_eq!(o.level(), 2);
            assert!((q - 1.0 / 6.0).abs() < 1e-15);
        }
    }

    #[test]
    fn cb_marginals_match_enumeration() {
        let odds = OddsVector::from_w(&[0.5, 1.5, 2.0]).unwrap();
        for mode in [FamilyMode::Level { m: 2 }, FamilyMode::TwoLevel { m: 1 }] {
            let f = family_pmf(&odds.theta(), mode).unwrap();
            let direct = f.marginal_means();
            let formula = cb_marginals(&odds, mode).unwrap();
            for j in 0..3 {
                assert!(
                    (direct.get(j) - formula.get(j)).abs() < 1e-12,
                    "mode {mode:?}, coordinate {j}"
                );
            }
        }
    }

    #[test]
    fn solver_hits_integer_mode_targets() {
        let p = Marginals::new(vec![0.25f64, 0.5, 0.75, 0.5]).unwrap();
        let r = solve_max_entropy(&p, DEFAULT_TOL).unwrap();
        assert_eq!(r.mode, FamilyMode::Level { m: 2 });
        assert!(r.residual <= 1e-9);
        for (o, _) in r.pmf.support() {
            assert_eq!(o.level(), 2);
        }
        // Gauge is fixed.
        let theta = r.odds.theta();
        assert!(theta.iter().sum::<f64>().abs() < 1e-9);
    }

    #[test]
    fn solver_hits_fractional_mode_targets() {
        let p = Marginals::new(vec![0.3f64, 0.5, 0.4]).unwrap();
        let r = solve_max_entropy(&p, DEFAULT_TOL).unwrap();
        assert_eq!(r.mode, FamilyMode::TwoLevel { m: 1 });
        assert!(r.residual <= 1e-9);
        for (o, _) in r.pmf.support() {
            assert!(o.level() == 1 || o.level() == 2);
        }
        let achieved = r.pmf.marginal_means();
        for j in 0..3 {
            assert!((achieved.get(j) - p.get(j)).abs() <= 1e-9);
        }
    }

    #[test]
    fn equal_marginals_recover_the_exchangeable_closed_form() {
        let exact = exchangeable_sigma_pmf(4, &rat(2, 5)).unwrap();
        let p = Marginals::new(vec![0.4f64; 4]).unwrap();
        let solved = solve_max_entropy(&p, DEFAULT_TOL).unwrap();
        let exact_f = exact.to_f64();
        for o in 0..16usize {
            assert!(
                (solved.pmf.probs()[o] - exact_f.probs()[o]).abs() < 1e-9,
                "outcome {o}"
            );
        }
    }

    #[test]
    fn exchangeable_closed_form_values() {
        let f = exchangeable_sigma_pmf(3, &rat(2, 5)).unwrap();
        for (o, q) in f.support() {
            match o.level() {
                1 => assert_eq!(*q, rat(4, 15)),
                2 => assert_eq!(*q, rat(1, 15)),
                l => panic!("unexpected level {l}"),
            }
        }
        let p = f.marginal_means();
        assert_eq!(p.as_slice(), &[rat(2, 5), rat(2, 5), rat(2, 5)]);
        // Integer total: single level, uniform.
        let g = exchangeable_sigma_pmf(4, &rat(1, 2)).unwrap();
        for (o, q) in g.support() {
            assert_eq!(o.level(), 2);
            assert_eq!(*q, rat(1, 6));
        }
    }

    #[test]
    fn incompatible_override_is_rejected() {
        let p = Marginals::new(vec![0.3f64, 0.5, 0.4]).unwrap(); // p• = 1.2
        assert!(matches!(
            solve_max_entropy_with(&p, DEFAULT_TOL, Some(FamilyMode::Level { m: 1 })),
            Err(Error::IncompatibleMode { .. })
        ));
        assert!(matches!(
            solve_max_entropy_with(&p, DEFAULT_TOL, Some(FamilyMode::TwoLevel { m: 2 })),
            Err(Error::IncompatibleMode { .. })
        ));
    }

    #[test]
    fn boundary_marginals_are_rejected() {
        let p = Marginals::new(vec![0.0f64, 0.5]).unwrap();
        assert!(matches!(
            solve_max_entropy(&p, DEFAULT_TOL),
            Err(Error::BoundaryMarginal { coordinate: 0, .. })
        ));
    }

    #[test]
    fn pgf_check_accepts_solved_and_rejects_tampered() {
        let p = Marginals::new(vec![0.3f64, 0.5, 0.4]).unwrap();
        let r = solve_max_entropy(&p, DEFAULT_TOL).unwrap();
        assert!(maxent_pgf(&r).is_ok());
        let mut tampered = r.clone();
        let mut probs = tampered.pmf.probs().to_vec();
        // Move mass between two support outcomes: stays a pmf, breaks the
        // product form.
        let support: Vec<usize> = tampered.pmf.support().map(|(o, _)| o.index()).collect();
        probs[support[0]] += 0.01;
        probs[support[1]] -= 0.01;
        tampered.pmf = Pmf::new(3, probs).unwrap();
        assert!(matches!(
            maxent_pgf(&tampered),
            Err(Error::NotProductForm { .. })
        ));
    }
}
