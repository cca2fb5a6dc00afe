//! Derived constructions: the mixture chain running from the minimal-sum
//! maximum-entropy pmf to the product pmf, and the polarization construction
//! that spreads a low-dimensional minimal-sum pmf across blocks of
//! coordinates.

use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::maxent::{self, exchangeable_sigma_pmf};
use crate::orders::{sm_leq, OrderRelation};
use crate::outcome::Outcome;
use crate::pmf::{Marginals, Pmf};
use crate::polytope::enumerate_vertices;

/// The exact maximum-entropy pmf supported on the two sum levels adjacent
/// to `p•`.
///
/// Equal marginals admit a closed form. Otherwise the floating Newton
/// solver runs and its result is snapped onto the marginal polytope by
/// sup-norm projection, producing an exact member with exact marginals
/// within solver tolerance of the true optimum.
pub fn exact_sigma_maxent(p: &Marginals<BigRational>) -> Result<Pmf<BigRational>> {
    let first = &p.as_slice()[0];
    if p.as_slice().iter().all(|v| v == first) {
        return exchangeable_sigma_pmf(p.d(), first);
    }
    let solved = maxent::solve_max_entropy(&p.to_f64(), maxent::DEFAULT_TOL)?;
    let poly = enumerate_vertices(p, true)?;
    let (snapped, _deviation) = poly.nearest(&solved.pmf)?;
    Ok(snapped)
}

/// A mixture path `(1−α)·f_base + α·f_product` through the Fréchet class,
/// with supermodular-order verdicts between consecutive members.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub p: Marginals<BigRational>,
    pub alphas: Vec<BigRational>,
    pub members: Vec<Pmf<BigRational>>,
    /// Verdict for each consecutive pair `(members[i], members[i+1])`.
    pub consecutive: Vec<OrderRelation>,
}

/// Builds the mixture chain at the given mixing weights, which must be
/// nondecreasing within `[0, 1]`. The endpoint at 0 is the minimal-sum
/// maximum-entropy pmf; the endpoint at 1 is the product pmf. Every member
/// has marginals exactly `p`, and consecutive members are compared in the
/// supermodular order with certificates.
pub fn alpha_chain(
    p: &Marginals<BigRational>,
    alphas: &[BigRational],
) -> Result<ChainSpec> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    if alphas.is_empty() {
        return Err(Error::BadAlphas);
    }
    if alphas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::BadAlphas);
    }
    if alphas[0] < zero || *alphas.last().expect("nonempty") > one {
        return Err(Error::BadAlphas);
    }
    let base = exact_sigma_maxent(p)?;
    let product = Pmf::product(p)?;
    let members: Vec<Pmf<BigRational>> = alphas
        .iter()
        .map(|a| base.mix(&product, a.clone()))
        .collect::<Result<_>>()?;
    let consecutive: Vec<OrderRelation> = members
        .windows(2)
        .map(|w| Ok(sm_leq(&w[0], &w[1])?.relation))
        .collect::<Result<_>>()?;
    Ok(ChainSpec {
        p: p.clone(),
        alphas: alphas.to_vec(),
        members,
        consecutive,
    })
}

/// A polarization: a partition of the coordinates into blocks, one
/// within-block mean per block, the block-level pmf, and the assembled
/// full-dimensional pmf in which each active block carries exactly one 1.
#[derive(Clone, Debug)]
pub struct PolarizationSpec {
    pub partition: Vec<Vec<usize>>,
    pub block_means: Vec<BigRational>,
    /// Minimal-sum maximum-entropy pmf at the block level (one coordinate
    /// per block, mean `λ_h · p̃_h`).
    pub block_pmf: Pmf<BigRational>,
    /// The assembled pmf on all `d` coordinates.
    pub pmf: Pmf<BigRational>,
}

fn validate_partition(partition: &[Vec<usize>]) -> Result<usize> {
    if partition.is_empty() {
        return Err(Error::BadPartition { reason: "no blocks".to_string() });
    }
    let d: usize = partition.iter().map(|b| b.len()).sum();
    let mut seen = vec![false; d];
    for (h, block) in partition.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::BadPartition {
                reason: format!("block {h} is empty"),
            });
        }
        for &l in block {
            if l >= d {
                return Err(Error::BadPartition {
                    reason: format!(
                        "coordinate {l} is out of range for the {d} coordinates \
                         covered by the blocks"
                    ),
                });
            }
            if seen[l] {
                return Err(Error::BadPartition {
                    reason: format!("coordinate {l} appears in more than one block"),
                });
            }
            seen[l] = true;
        }
    }
    Ok(d)
}

/// Polarizes: draws a block-level vector from the minimal-sum
/// maximum-entropy pmf with means `λ_h · p̃_h`, then places a single 1
/// uniformly within each active block. The result has marginal mean `p̃_h`
/// at every coordinate of block `h`, keeps two-level sum support, and
/// composes at the pgf level with the within-block linear forms.
///
/// Each block uses one within-block mean; `λ_h · p̃_h` must lie strictly
/// inside `(0, 1)`.
pub fn polarize(
    partition: &[Vec<usize>],
    block_means: &[BigRational],
) -> Result<PolarizationSpec> {
    let d = validate_partition(partition)?;
    if block_means.len() != partition.len() {
        return Err(Error::BadLength {
            got: block_means.len(),
            expected: partition.len(),
        });
    }
    let one = BigRational::one();
    let mut block_level_means = Vec::with_capacity(partition.len());
    for (h, (block, mean)) in partition.iter().zip(block_means).enumerate() {
        let lambda = BigRational::from_integer(block.len().into());
        let scaled = lambda * mean.clone();
        if !mean.is_positive() || scaled >= one {
            return Err(Error::BadPartition {
                reason: format!(
                    "block {h} needs 0 < mean < 1/{}, got {mean}",
                    block.len()
                ),
            });
        }
        block_level_means.push(scaled);
    }
    let block_pmf = exact_sigma_maxent(&Marginals::new(block_level_means)?)?;

    let mut probs = vec![BigRational::zero(); 1 << d];
    'outcome: for o in Outcome::all(d) {
        let mut block_index = 0usize;
        let mut placement = BigRational::one();
        for (h, block) in partition.iter().enumerate() {
            match block.iter().filter(|&&l| o.bit(l)).count() {
                0 => {}
                1 => {
                    block_index |= 1 << h;
                    placement /= BigRational::from_integer(block.len().into());
                }
                _ => continue 'outcome,
            }
        }
        let base = block_pmf.prob(Outcome::from_index(block_index));
        if !base.is_zero() {
            probs[o.index()] = base.clone() * placement;
        }
    }
    let pmf = Pmf::new(d, probs)?;
    debug_assert!(pmf
        .marginal_means()
        .as_slice()
        .iter()
        .enumerate()
        .all(|(l, v)| {
            let h = partition.iter().position(|b| b.contains(&l)).expect("cover");
            v == &block_means[h]
        }));
    Ok(PolarizationSpec {
        partition: partition.to_vec(),
        block_means: block_means.to_vec(),
        block_pmf,
        pmf,
    })
}

/// Verifies, coefficient by coefficient, that the assembled pmf's
/// generating polynomial equals the block-level generating polynomial
/// composed with the within-block linear forms `(1/λ_h) Σ_{l∈Λ_h} z_l`.
/// The composition is expanded by genuine polynomial multiplication, a
/// route independent of the assembly in [`polarize`].
pub fn pgf_compose_check(spec: &PolarizationSpec) -> bool {
    let d = spec.pmf.d();
    let mut composed = vec![BigRational::zero(); 1 << d];
    for (b, w) in spec.block_pmf.support() {
        // Multiply out Π_{h active} L_h, seeded with this block pattern's
        // probability. Blocks are disjoint, so products stay multi-affine.
        let mut poly = vec![BigRational::zero(); 1 << d];
        poly[0] = w.clone();
        for (h, block) in spec.partition.iter().enumerate() {
            if !b.bit(h) {
                continue;
            }
            let inv_lambda =
                BigRational::one() / BigRational::from_integer(block.len().into());
            let mut next = vec![BigRational::zero(); 1 << d];
            for (mask, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &l in block {
                    debug_assert_eq!(mask & (1 << l), 0, "blocks are disjoint");
                    next[mask | (1 << l)] += c.clone() * inv_lambda.clone();
                }
            }
            poly = next;
        }
        for (acc, term) in composed.iter_mut().zip(poly) {
            *acc += term;
        }
    }
    composed == spec.pmf.probs()
}

/// Covariance of coordinate-exponential functionals under `f`:
/// `Cov(exp(Σ_j a_j I_j), exp(Σ_j b_j I_j))`. Both functionals are
/// nondecreasing when the weights are nonnegative, so a positive value on
/// disjointly supported weights witnesses a failure of negative association.
pub fn exp_covariance(f: &Pmf<f64>, a: &[f64], b: &[f64]) -> Result<f64> {
    let d = f.d();
    if a.len() != d {
        return Err(Error::BadLength { got: a.len(), expected: d });
    }
    if b.len() != d {
        return Err(Error::BadLength { got: b.len(), expected: d });
    }
    let dot = |o: Outcome, w: &[f64]| -> f64 {
        w.iter()
            .enumerate()
            .filter(|&(j, _)| o.bit(j))
            .map(|(_, v)| v)
            .sum()
    };
    let (mut ex, mut ey, mut exy) = (0.0, 0.0, 0.0);
    for (o, p) in f.support() {
        let x = dot(o, a).exp();
        let y = dot(o, b).exp();
        ex += p * x;
        ey += p * y;
        exy += p * x * y;
    }
    Ok(exy - ex * ey)
}
