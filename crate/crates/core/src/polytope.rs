//! The polytope of pmfs with prescribed marginal means — the full Fréchet
//! class or its restriction to minimal sum support — with exact vertex
//! enumeration, convex decomposition, seeded interior sampling, and
//! nearest-point projection.
//!
//! Everything here is exact rational arithmetic: vertices are enumerated by
//! a depth-first search over independent support-column subsets of the
//! marginal constraint system, sharing elimination work along the prefix
//! tree, and feasibility questions are settled by the exact simplex solver.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::lp::{LpBuilder, LpOutcome};
use crate::outcome::Outcome;
use crate::pmf::{Marginals, Pmf};
use crate::scalar::Scalar;

/// Dimension bounds for vertex enumeration: the full-cube polytope has
/// `2^d` support columns, the sum-restricted one at most
/// `C(d,m) + C(d,m+1)`.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationLimits {
    pub full_cube: usize,
    pub sigma: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { full_cube: 5, sigma: 6 }
    }
}

/// Dimension bound for [`find_sigma_ctm`], which solves a single
/// feasibility program instead of enumerating vertices.
pub const FIND_DIMENSION_BOUND: usize = 14;

/// The polytope of pmfs with marginal means `p`, optionally restricted to
/// the two sum levels adjacent to `p•`, with its complete vertex list.
#[derive(Clone, Debug)]
pub struct FrechetPolytope {
    d: usize,
    p: Marginals<BigRational>,
    sigma: bool,
    support: Vec<Outcome>,
    vertices: Vec<Pmf<BigRational>>,
}

/// Support outcomes of the sum-restricted class: the levels `⌊p•⌋` and
/// (when `p•` is not an integer) `⌊p•⌋ + 1`.
fn sigma_support(d: usize, p: &Marginals<BigRational>) -> Vec<Outcome> {
    let p_bullet = p.p_bullet();
    let m_int = p_bullet.floor().to_integer();
    let m = usize::try_from(&m_int).expect("level fits usize");
    let mut support: Vec<Outcome> = Outcome::with_level(d, m).collect();
    if !p_bullet.is_integer() {
        support.extend(Outcome::with_level(d, m + 1));
    }
    support.sort_unstable_by_key(|o| o.index());
    support
}

/// Marginal constraint column for one support outcome: a leading 1 for
/// normalization followed by the coordinate indicators.
fn constraint_column(d: usize, o: Outcome) -> Vec<BigRational> {
    let mut col = Vec::with_capacity(d + 1);
    col.push(BigRational::from_integer(1.into()));
    for j in 0..d {
        col.push(if o.bit(j) {
            BigRational::from_integer(1.into())
        } else {
            BigRational::zero()
        });
    }
    col
}

fn constraint_rhs(p: &Marginals<BigRational>) -> Vec<BigRational> {
    let mut b = Vec::with_capacity(p.d() + 1);
    b.push(BigRational::from_integer(1.into()));
    b.extend(p.as_slice().iter().cloned());
    b
}

fn check_interior(p: &Marginals<BigRational>) -> Result<()> {
    for (j, v) in p.as_slice().iter().enumerate() {
        if !v.is_positive() || *v >= BigRational::from_integer(1.into()) {
            return Err(Error::BoundaryMarginal {
                coordinate: j,
                value: v.to_string(),
            });
        }
    }
    Ok(())
}

/// Enumerates all vertices of the marginal polytope with default limits.
pub fn enumerate_vertices(
    p: &Marginals<BigRational>,
    restrict_sigma: bool,
) -> Result<FrechetPolytope> {
    enumerate_vertices_with(p, restrict_sigma, EnumerationLimits::default())
}

/// Enumerates all vertices of the marginal polytope: basic feasible
/// solutions of the constraint system over the support columns, deduplicated
/// and sorted by support bitmask.
pub fn enumerate_vertices_with(
    p: &Marginals<BigRational>,
    restrict_sigma: bool,
    limits: EnumerationLimits,
) -> Result<FrechetPolytope> {
    let d = p.d();
    check_interior(p)?;
    let bound = if restrict_sigma { limits.sigma } else { limits.full_cube };
    if d > bound {
        return Err(Error::DimensionBound { d, bound, operation: "vertex enumeration" });
    }
    let support: Vec<Outcome> = if restrict_sigma {
        sigma_support(d, p)
    } else {
        Outcome::all(d).collect()
    };
    let columns: Vec<Vec<BigRational>> =
        support.iter().map(|&o| constraint_column(d, o)).collect();
    let b = constraint_rhs(p);
    let rank = column_rank(&columns);
    let mut search = VertexSearch {
        columns: &columns,
        b: &b,
        rank,
        pivots: Vec::with_capacity(rank),
        chosen: Vec::with_capacity(rank),
        found: BTreeSet::new(),
    };
    search.run(0);
    let mut vertices: Vec<Pmf<BigRational>> = search
        .found
        .into_iter()
        .map(|values| {
            let entries = support
                .iter()
                .zip(&values)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&o, v)| (o, v.clone()));
            Pmf::from_support(d, entries).expect("verified basic feasible solution")
        })
        .collect();
    vertices.sort_by_key(|f| {
        let mask: u64 = f.support().fold(0, |m, (o, _)| m | 1 << o.index());
        (mask, f.probs().to_vec())
    });
    Ok(FrechetPolytope { d, p: p.clone(), sigma: restrict_sigma, support, vertices })
}

fn column_rank(columns: &[Vec<BigRational>]) -> usize {
    let mut pivots: Vec<PivotRec> = Vec::new();
    for col in columns {
        if let Some(rec) = reduce_column(col, &pivots) {
            pivots.push(rec);
        }
    }
    pivots.len()
}

struct PivotRec {
    lead: usize,
    /// The column reduced against all earlier pivots.
    reduced: Vec<BigRational>,
    /// Elimination factors against earlier pivots (for back-substitution).
    factors: Vec<BigRational>,
}

/// Reduces a column against the pivot prefix; `None` when dependent.
fn reduce_column(col: &[BigRational], pivots: &[PivotRec]) -> Option<PivotRec> {
    let mut v = col.to_vec();
    let mut factors = Vec::with_capacity(pivots.len());
    for rec in pivots {
        let factor = if v[rec.lead].is_zero() {
            BigRational::zero()
        } else {
            let f = v[rec.lead].clone() / rec.reduced[rec.lead].clone();
            for (vi, pi) in v.iter_mut().zip(&rec.reduced) {
                *vi -= f.clone() * pi.clone();
            }
            f
        };
        factors.push(factor);
    }
    let lead = v.iter().position(|c| !c.is_zero())?;
    Some(PivotRec { lead, reduced: v, factors })
}

struct VertexSearch<'a> {
    columns: &'a [Vec<BigRational>],
    b: &'a [BigRational],
    rank: usize,
    pivots: Vec<PivotRec>,
    chosen: Vec<usize>,
    /// Deduplicated support-value vectors of accepted basic solutions.
    found: BTreeSet<Vec<BigRational>>,
}

impl VertexSearch<'_> {
    fn run(&mut self, start: usize) {
        if self.pivots.len() == self.rank {
            self.emit();
            return;
        }
        let needed = self.rank - self.pivots.len();
        let last_start = self.columns.len().saturating_sub(needed);
        for c in start..=last_start {
            if let Some(rec) = reduce_column(&self.columns[c], &self.pivots) {
                self.pivots.push(rec);
                self.chosen.push(c);
                self.run(c + 1);
                self.pivots.pop();
                self.chosen.pop();
            }
        }
    }

    /// Solves the basis system exactly and records the solution when
    /// feasible. The reduced columns are lower triangular in lead-row
    /// order, and the recorded factors convert back to the original basis.
    fn emit(&mut self) {
        let r = self.rank;
        // Forward solve Σ y_k · reduced_k = b.
        let mut y = Vec::with_capacity(r);
        for k in 0..r {
            let lead = self.pivots[k].lead;
            let mut rhs = self.b[lead].clone();
            for (j, yj) in y.iter().enumerate().take(k) {
                let yj: &BigRational = yj;
                rhs -= yj.clone() * self.pivots[j].reduced[lead].clone();
            }
            y.push(rhs / self.pivots[k].reduced[lead].clone());
        }
        // Back-substitute to weights on the original columns:
        // original_j = reduced_j + Σ_{i<j} factor_{ji} · reduced_i.
        let mut x = vec![BigRational::zero(); r];
        for j in (0..r).rev() {
            let mut val = y[j].clone();
            for k in j + 1..r {
                val -= self.pivots[k].factors[j].clone() * x[k].clone();
            }
            x[j] = val;
        }
        if x.iter().any(|v| v.is_negative()) {
            return;
        }
        // Verify every constraint row against the original columns: the
        // enumeration is sound even if the rhs were outside the column span.
        let rows = self.b.len();
        for row in 0..rows {
            let mut acc = BigRational::zero();
            for (k, &c) in self.chosen.iter().enumerate() {
                if !self.columns[c][row].is_zero() {
                    acc += x[k].clone() * self.columns[c][row].clone();
                }
            }
            if acc != self.b[row] {
                return;
            }
        }
        let mut values = vec![BigRational::zero(); self.columns.len()];
        for (k, &c) in self.chosen.iter().enumerate() {
            values[c] = x[k].clone();
        }
        self.found.insert(values);
    }
}

impl FrechetPolytope {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn marginals(&self) -> &Marginals<BigRational> {
        &self.p
    }

    pub fn sigma_restricted(&self) -> bool {
        self.sigma
    }

    pub fn support(&self) -> &[Outcome] {
        &self.support
    }

    pub fn vertices(&self) -> &[Pmf<BigRational>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Expresses a member pmf as a convex combination of the vertices,
    /// choosing the lexicographically smallest weight vector (in vertex
    /// order) among all valid decompositions, which makes the result
    /// deterministic even when the decomposition is not unique.
    pub fn decompose(&self, f: &Pmf<BigRational>) -> Result<Vec<BigRational>> {
        if f.d() != self.d {
            return Err(Error::DimensionMismatch { left: f.d(), right: self.d });
        }
        let in_support: BTreeSet<usize> = self.support.iter().map(|o| o.index()).collect();
        for (o, _) in f.support() {
            if !in_support.contains(&o.index()) {
                return Err(Error::OutsidePolytope {
                    reason: format!(
                        "pmf has mass at outcome {} outside the polytope support",
                        o.key(self.d)
                    ),
                });
            }
        }
        let n = self.vertices.len();
        let mut fixed: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut lp = LpBuilder::new(n);
            let mut c = vec![BigRational::zero(); n];
            c[k] = BigRational::from_integer(1.into());
            lp.set_objective(c);
            for &o in &self.support {
                let coeffs: Vec<BigRational> =
                    self.vertices.iter().map(|v| v.prob(o).clone()).collect();
                lp.add_eq(coeffs, f.prob(o).clone());
            }
            for (i, val) in fixed.iter().enumerate() {
                let mut coeffs = vec![BigRational::zero(); n];
                coeffs[i] = BigRational::from_integer(1.into());
                lp.add_eq(coeffs, val.clone());
            }
            match lp.solve()? {
                LpOutcome::Optimal { objective, .. } => fixed.push(objective),
                LpOutcome::Infeasible { .. } => {
                    return Err(Error::OutsidePolytope {
                        reason: "marginals or masses differ from every convex \
                                 combination of the vertices"
                            .to_string(),
                    });
                }
                LpOutcome::Unbounded => return Err(Error::Unbounded),
            }
        }
        debug_assert_eq!(&self.reconstruct(&fixed)?, f);
        Ok(fixed)
    }

    /// Convex combination of the vertices with the given weights.
    pub fn reconstruct(&self, weights: &[BigRational]) -> Result<Pmf<BigRational>> {
        if weights.len() != self.vertices.len() {
            return Err(Error::BadLength {
                got: weights.len(),
                expected: self.vertices.len(),
            });
        }
        let mut probs = vec![BigRational::zero(); 1 << self.d];
        for (w, v) in weights.iter().zip(&self.vertices) {
            if w.is_negative() {
                return Err(Error::NegativeProbability {
                    outcome: "vertex weight".to_string(),
                    value: w.to_string(),
                });
            }
            for (o, q) in v.support() {
                probs[o.index()] += w.clone() * q.clone();
            }
        }
        Pmf::new(self.d, probs)
    }

    /// Draws pmfs from the polytope by seeded Dirichlet(1) weights over the
    /// vertices: float exponential draws are converted losslessly to
    /// rationals and normalized exactly, so every sample has exactly the
    /// polytope's marginals.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<Pmf<BigRational>> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let draws: Vec<BigRational> = (0..n)
                .map(|_| {
                    let u: f64 = rng.random();
                    (-(1.0 - u).ln()).to_exact()
                })
                .collect();
            let total: BigRational = draws.iter().cloned().sum();
            if total.is_zero() {
                continue;
            }
            let weights: Vec<BigRational> =
                draws.into_iter().map(|e| e / total.clone()).collect();
            out.push(self.reconstruct(&weights).expect("weights sum to one"));
        }
        out
    }

    /// Finds the member of the polytope closest in sup norm to an arbitrary
    /// target pmf, returning the member and the achieved deviation.
    /// Minimizes `s` subject to `|Σ_v λ_v f_v(o) − target(o)| ≤ s` over all
    /// outcomes, `λ ≥ 0`, `Σ λ = 1`.
    pub fn nearest(&self, target: &Pmf<f64>) -> Result<(Pmf<BigRational>, BigRational)> {
        if target.d() != self.d {
            return Err(Error::DimensionMismatch { left: target.d(), right: self.d });
        }
        let n = self.vertices.len();
        let one = BigRational::from_integer(1.into());
        // Variables: λ_0..λ_{n−1}, then s.
        let mut lp = LpBuilder::new(n + 1);
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = one.clone();
        lp.set_objective(c);
        let mut norm = vec![one.clone(); n];
        norm.push(BigRational::zero());
        lp.add_eq(norm, one.clone());
        for o in Outcome::all(self.d) {
            let t = target.prob(o).to_exact();
            let mut up: Vec<BigRational> =
                self.vertices.iter().map(|v| v.prob(o).clone()).collect();
            let mut down: Vec<BigRational> =
                up.iter().map(|v| -v.clone()).collect();
            up.push(-one.clone());
            down.push(-one.clone());
            lp.add_le(up, t.clone());
            lp.add_le(down, -t);
        }
        match lp.solve()? {
            LpOutcome::Optimal { x, objective } => {
                let pmf = self.reconstruct(&x[..n])?;
                Ok((pmf, objective))
            }
            LpOutcome::Infeasible { .. } => Err(Error::Infeasible {
                context: "sup-norm projection onto the marginal polytope",
            }),
            LpOutcome::Unbounded => Err(Error::Unbounded),
        }
    }
}

/// Produces one pmf with marginal means `p` supported on the two sum levels
/// adjacent to `p•`, via a single exact feasibility program (no vertex
/// enumeration), practical through `d =` [`FIND_DIMENSION_BOUND`].
pub fn find_sigma_ctm(p: &Marginals<BigRational>) -> Result<Pmf<BigRational>> {
    let d = p.d();
    check_interior(p)?;
    if d > FIND_DIMENSION_BOUND {
        return Err(Error::DimensionBound {
            d,
            bound: FIND_DIMENSION_BOUND,
            operation: "sum-countermonotonic construction",
        });
    }
    let support = sigma_support(d, p);
    let mut lp = LpBuilder::new(support.len());
    let b = constraint_rhs(p);
    for row in 0..=d {
        let coeffs: Vec<BigRational> = support
            .iter()
            .map(|&o| constraint_column(d, o)[row].clone())
            .collect();
        lp.add_eq(coeffs, b[row].clone());
    }
    match lp.solve()? {
        LpOutcome::Optimal { x, .. } => {
            let entries = support
                .iter()
                .zip(&x)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&o, v)| (o, v.clone()));
            Pmf::from_support(d, entries)
        }
        LpOutcome::Infeasible { .. } => Err(Error::Infeasible {
            context: "two-level support with the requested marginals",
        }),
        LpOutcome::Unbounded => Err(Error::Unbounded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxent::exchangeable_sigma_pmf;
    use crate::properties::{is_sigma_ctm, CtmMethod};
    use num::rational::Ratio;
    use num::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    fn marg(values: &[(i64, i64)]) -> Marginals<BigRational> {
        Marginals::new(values.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn bivariate_class_has_the_two_frechet_bounds() {
        let p = marg(&[(1, 3), (1, 2)]);
        let poly = enumerate_vertices(&p, false).unwrap();
        assert_eq!(poly.num_vertices(), 2);
        let lower = crate::pmf::frechet_lower_pmf(&p).unwrap();
        assert!(poly.vertices().contains(&lower));
        // The comonotone coupling: P(00)=1/2, P(01)=1/6, P(11)=1/3.
        let upper = Pmf::from_support(
            2,
            [
                (Outcome::from_index(0b00), rat(1, 2)),
                (Outcome::from_index(0b10), rat(1, 6)),
                (Outcome::from_index(0b11), rat(1, 3)),
            ],
        )
        .unwrap();
        assert!(poly.vertices().contains(&upper));
    }

    #[test]
    fn small_mean_total_gives_a_single_vertex() {
        // p• < 1: the sum-restricted class is a single point (the lower
        // Fréchet pmf).
        let p = marg(&[(1, 4), (1, 4), (1, 3)]);
        let poly = enumerate_vertices(&p, true).unwrap();
        assert_eq!(poly.num_vertices(), 1);
        assert_eq!(poly.vertices()[0], crate::pmf::frechet_lower_pmf(&p).unwrap());
    }

    #[test]
    fn vertices_are_basic_members_with_exact_marginals() {
        let p = marg(&[(2, 5), (2, 5), (2, 5)]);
        let poly = enumerate_vertices(&p, true).unwrap();
        assert!(poly.num_vertices() >= 2);
        for v in poly.vertices() {
            assert!(v.support().count() <= 4, "more atoms than constraints");
            assert_eq!(v.marginal_means().as_slice(), p.as_slice());
            let report = is_sigma_ctm(v, CtmMethod::Support).unwrap();
            assert!(report.holds);
        }
    }

    #[test]
    fn sigma_vertices_are_a_subset_of_cube_vertices() {
        let p = marg(&[(1, 2), (1, 3), (2, 5)]);
        let sigma = enumerate_vertices(&p, true).unwrap();
        let full = enumerate_vertices(&p, false).unwrap();
        for v in sigma.vertices() {
            assert!(
                full.vertices().contains(v),
                "sum-restricted vertex missing from the full polytope"
            );
        }
        assert!(full.num_vertices() > sigma.num_vertices());
    }

    #[test]
    fn decompose_recovers_the_exchangeable_member() {
        let p = marg(&[(2, 5), (2, 5), (2, 5)]);
        let poly = enumerate_vertices(&p, true).unwrap();
        let f = exchangeable_sigma_pmf(3, &rat(2, 5)).unwrap();
        let weights = poly.decompose(&f).unwrap();
        let total: BigRational = weights.iter().cloned().sum();
        assert_eq!(total, rat(1, 1));
        assert_eq!(poly.reconstruct(&weights).unwrap(), f);
    }

    #[test]
    fn decompose_rejects_outsiders() {
        let p = marg(&[(2, 5), (2, 5), (2, 5)]);
        let poly = enumerate_vertices(&p, true).unwrap();
        // Right marginals, wrong support (mass at the origin).
        let outsider = Pmf::from_support(
            3,
            [
                (Outcome::from_index(0b000), rat(1, 5)),
                (Outcome::from_index(0b111), rat(1, 5)),
                (Outcome::from_index(0b001), rat(1, 5)),
                (Outcome::from_index(0b010), rat(1, 5)),
                (Outcome::from_index(0b100), rat(1, 5)),
            ],
        )
        .unwrap();
        assert!(matches!(
            poly.decompose(&outsider),
            Err(Error::OutsidePolytope { .. })
        ));
    }

    #[test]
    fn samples_are_members_and_seed_deterministic() {
        let p = marg(&[(1, 2), (2, 5), (3, 10), (1, 2)]);
        let poly = enumerate_vertices(&p, true).unwrap();
        let a = poly.sample(3, 99);
        let b = poly.sample(3, 99);
        assert_eq!(a, b);
        for f in &a {
            assert_eq!(f.marginal_means().as_slice(), p.as_slice());
            assert!(is_sigma_ctm(f, CtmMethod::Support).unwrap().holds);
        }
        assert_ne!(poly.sample(1, 1)[0], poly.sample(1, 2)[0]);
    }

    #[test]
    fn nearest_snaps_floats_into_the_polytope() {
        let p = marg(&[(2, 5), (2, 5), (2, 5)]);
        let poly = enumerate_vertices(&p, true).unwrap();
        let target = exchangeable_sigma_pmf(3, &rat(2, 5)).unwrap().to_f64();
        let (snapped, deviation) = poly.nearest(&target).unwrap();
        assert!(deviation < rat(1, 1_000_000_000));
        assert_eq!(snapped.marginal_means().as_slice(), p.as_slice());
    }

    #[test]
    fn find_sigma_ctm_scales_past_enumeration_bounds() {
        let p = Marginals::new(
            (0..10).map(|j| rat(2 + (j % 3), 7)).collect::<Vec<_>>(),
        )
        .unwrap();
        let f = find_sigma_ctm(&p).unwrap();
        assert_eq!(f.marginal_means().as_slice(), p.as_slice());
        assert!(is_sigma_ctm(&f, CtmMethod::Support).unwrap().holds);
    }

    #[test]
    fn enumeration_bounds_are_enforced() {
        let p = Marginals::new(vec![rat(1, 2); 6]).unwrap();
        assert!(matches!(
            enumerate_vertices(&p, false),
            Err(Error::DimensionBound { bound: 5, .. })
        ));
        assert!(enumerate_vertices(&p, true).is_ok());
    }
}
