//! Exact real-root counting for rational polynomials via Sturm sequences.
//!
//! Used to certify that a sum-distribution generating polynomial has only
//! real roots. Multiple roots are handled by passing to the radical
//! (squarefree part) first, so "real-rooted" means every complex root is
//! real, regardless of multiplicity.

use num::rational::BigRational;
use num::{Signed, Zero};

/// A univariate polynomial with rational coefficients; `coeffs[i]`
/// multiplies `x^i`. Leading zeros are trimmed; the zero polynomial has an
/// empty coefficient list.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect();
        RatPoly::new(coeffs)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let factor = rem[k].clone() / lead.clone();
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[k - dd + i] -= &factor * c;
                }
            }
            quot[k - dd] = factor;
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn monic(&self) -> Self {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => {
                let l = l.clone();
                RatPoly::new(self.coeffs.iter().map(|c| c / l.clone()).collect())
            }
        }
    }

    /// Divides every coefficient by the absolute value of the leading one.
    /// A positive rescale leaves all sign information intact while keeping
    /// Sturm-chain coefficients small.
    fn normalized_positive(&self) -> Self {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => {
                let s = l.abs();
                RatPoly::new(self.coeffs.iter().map(|c| c / s.clone()).collect())
            }
        }
    }

    /// Squarefree part: `self / gcd(self, self')`.
    pub fn radical(&self) -> Self {
        if self.is_zero() || self.coeffs.len() == 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.divmod(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Sturm chain of the polynomial: `p, p', −rem(p, p'), ...` down to a
    /// constant, each member positively rescaled.
    pub fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.normalized_positive()];
        if self.coeffs.len() > 1 {
            chain.push(self.derivative().normalized_positive());
            while let Some(last) = chain.last() {
                if last.is_zero() || last.coeffs.len() == 1 {
                    break;
                }
                let prev = &chain[chain.len() - 2];
                let (_, r) = prev.divmod(last);
                if r.is_zero() {
                    break;
                }
                let neg = RatPoly::new(r.coeffs.iter().map(|c| -c).collect());
                chain.push(neg.normalized_positive());
            }
        }
        chain
    }

    /// Number of distinct real roots, counted exactly.
    pub fn count_real_roots(&self) -> usize {
        if self.is_zero() || self.coeffs.len() == 1 {
            return 0;
        }
        let chain = self.radical().sturm_chain();
        let sign_at = |p: &RatPoly, at_neg_inf: bool| -> i8 {
            match p.leading() {
                None => 0,
                Some(l) => {
                    let mut s: i8 = if l.is_positive() { 1 } else { -1 };
                    if at_neg_inf && p.degree().unwrap() % 2 == 1 {
                        s = -s;
                    }
                    s
                }
            }
        };
        let variations = |at_neg_inf: bool| -> usize {
            let mut count = 0;
            let mut prev: i8 = 0;
            for p in &chain {
                let s = sign_at(p, at_neg_inf);
                if s != 0 {
                    if prev != 0 && s != prev {
                        count += 1;
                    }
                    prev = s;
                }
            }
            count
        };
        variations(true) - variations(false)
    }

    /// Whether every complex root is real (multiplicity disregarded).
    /// Constants, including the zero polynomial, count as real-rooted.
    pub fn real_rooted(&self) -> bool {
        let rad = self.radical();
        match rad.degree() {
            None | Some(0) => true,
            Some(deg) => rad.count_real_roots() == deg,
        }
    }
}
