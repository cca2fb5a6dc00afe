//! Analysis of negative dependence for multivariate Bernoulli
//! distributions — probability mass functions on binary vectors
//! `{0,1}^d`.
//!
//! The library provides, over both `f64` and exact `BigRational`
//! arithmetic:
//!
//! - [`pmf`]: pmfs, marginal means, sums, Fréchet bounds, mixing,
//!   marginalization, and conditioning.
//! - [`properties`]: decision procedures for negative-dependence notions —
//!   pairwise negative correlation, negative lattice condition, joint
//!   mixability, (pairwise and sum-level) countermonotonicity, negative
//!   association, and negative superadditive dependence — each returning a
//!   witness when the property fails.
//! - [`orders`]: the supermodular, weak-association, and convex orders,
//!   decided exactly with two-sided certificates (mass-transfer
//!   decompositions or supermodular refuting functions).
//! - [`maxent`]: conditional Bernoulli families on one or two sum levels,
//!   maximum-entropy solving for prescribed marginals, and exchangeable
//!   closed forms.
//! - [`stability`]: strong Rayleigh (negative dependence of determinantal
//!   type) certification and seeded falsification over the real-stability
//!   inequality of the generating polynomial.
//! - [`polytope`]: exact vertex enumeration of marginal polytopes, convex
//!   decomposition, seeded sampling, and sup-norm projection.
//! - [`constructions`]: the mixture chain from the minimal-sum
//!   maximum-entropy pmf to the product pmf, and the block polarization
//!   construction.
//!
//! Exact results are exact: verdicts about orders, vertices, and stability
//! certificates are produced in rational arithmetic, with floating point
//! confined to search heuristics and entropy values.

pub mod constructions;
pub mod error;
pub mod json;
pub mod lp;
pub mod maxent;
pub mod orders;
pub mod outcome;
pub mod pmf;
pub mod polytope;
pub mod properties;
pub mod scalar;
pub mod stability;
pub mod sturm;

pub use constructions::{
    alpha_chain, exact_sigma_maxent, exp_covariance, pgf_compose_check, polarize,
    ChainSpec, PolarizationSpec,
};
pub use error::{Error, Result};
pub use json::{emit_pmf, parse_pmf, rational_string, AnyPmf, ArithmeticMode};
pub use maxent::{
    cond_bernoulli_pmf, cond_bernoulli_pmf_plus, exchangeable_sigma_pmf,
    solve_max_entropy, FamilyMode, MaxEntResult, OddsVector,
};
pub use orders::{
    apply_transfers, cx_leq, sigma_class_position, sm_leq, sum_cx_leq,
    verify_supermodular_witness, wassoc_implies_sm_consistent, wassoc_leq,
    CxVerdict, OrderRelation, SigmaClassPosition, SmVerdict,
    SupermodularWitness, Transfer, WassocVerdict,
};
pub use outcome::Outcome;
pub use pmf::{frechet_lower_pmf, s_min, Marginals, Pmf, SumPmf};
pub use polytope::{
    enumerate_vertices, enumerate_vertices_with, find_sigma_ctm, EnumerationLimits,
    FrechetPolytope,
};
pub use properties::{
    is_countermonotonic_pair, is_joint_mix, is_na, is_nlc, is_nsd,
    is_pairwise_ctm, is_pnc, is_sigma_ctm, CtmMethod,
};
pub use scalar::{rational_from_f64, rational_from_str, Scalar};
pub use stability::{
    esp_identity_check, is_strongly_rayleigh, rayleigh_gap, MultiAffinePoly,
    SearchConfig, SrVerdict, StableRoute,
};
