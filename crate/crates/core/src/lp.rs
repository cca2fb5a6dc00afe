//! Exact linear programming over arbitrary-precision rationals.
//!
//! A small dense two-phase simplex with Bland's anti-cycling rule. Everything
//! here is exact: feasibility answers are proofs, not tolerances. When a
//! system is infeasible the solver returns a Farkas certificate `y` with
//! `yᵀA ≤ 0` componentwise and `yᵀb > 0`, which callers turn into separating
//! witnesses (for the supermodular order, `−y` is a supermodular function
//! whose expectation decreases).
//!
//! Problem sizes in this crate are modest (tens of rows, at most a few
//! hundred columns), so a dense rational tableau is simpler and fast enough;
//! no external solver offers exact certificates.

use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `min cᵀx` subject to `Ax = b`, `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal {
        x: Vec<BigRational>,
        objective: BigRational,
    },
    /// `farkas[i]` multiplies constraint row `i` (in original orientation);
    /// the combination proves `Ax = b, x ≥ 0` unsolvable.
    Infeasible { farkas: Vec<BigRational> },
    Unbounded,
}

struct Tableau {
    /// `rows[i]` has `num_cols` coefficient entries followed by the rhs.
    rows: Vec<Vec<BigRational>>,
    /// Reduced-cost row; last entry is minus the current objective value.
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    num_cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = &*v / &inv;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                *v = &*v - &(&factor * p);
            }
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for (v, p) in self.cost.iter_mut().zip(&pivot_row) {
                *v = &*v - &(&factor * p);
            }
        }
        self.basis[row] = col;
    }

    /// One phase of Bland-rule simplex over the allowed columns. Returns
    /// `None` on optimality, or the unbounded entering column.
    fn run(&mut self, allowed: &[bool]) -> Option<usize> {
        loop {
            let entering = (0..self.num_cols)
                .find(|&j| allowed[j] && self.cost[j].is_negative());
            let Some(col) = entering else {
                return None;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if !r[col].is_positive() {
                    continue;
                }
                let ratio = &r[self.num_cols] / &r[col];
                let better = match &leave {
                    None => true,
                    Some((best_i, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_i])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Some(col),
            }
        }
    }

    fn objective(&self) -> BigRational {
        -self.cost[self.num_cols].clone()
    }
}

/// Solves a standard-form LP exactly.
pub fn solve(lp: &StandardLp) -> Result<LpOutcome> {
    let m = lp.a.len();
    let n = lp.c.len();
    if lp.b.len() != m {
        return Err(Error::BadLength {
            got: lp.b.len(),
            expected: m,
        });
    }
    for row in &lp.a {
        if row.len() != n {
            return Err(Error::BadLength {
                got: row.len(),
                expected: n,
            });
        }
    }

    // Orient rows so the right-hand side is nonnegative, remembering signs to
    // restore the Farkas certificate later.
    let mut sigma = vec![BigRational::one(); m];
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = lp.b[i].is_negative();
        if flip {
            sigma[i] = -BigRational::one();
        }
        let mut r: Vec<BigRational> = lp.a[i]
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        // Artificial identity block.
        for k in 0..m {
            r.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        r.push(if flip { -lp.b[i].clone() } else { lp.b[i].clone() });
        rows.push(r);
    }

    let num_cols = n + m;
    // Phase-1 reduced costs: cost 1 on each artificial, priced out over the
    // artificial starting basis, which subtracts every constraint row.
    let mut cost = vec![BigRational::zero(); num_cols + 1];
    for j in n..num_cols {
        cost[j] = BigRational::one();
    }
    for r in &rows {
        for (cj, rj) in cost.iter_mut().zip(r) {
            *cj = &*cj - rj;
        }
    }

    let mut tab = Tableau {
        rows,
        cost,
        basis: (n..num_cols).collect(),
        num_cols,
    };
    let allow_all = vec![true; num_cols];
    let unbounded = tab.run(&allow_all);
    debug_assert!(unbounded.is_none(), "phase 1 objective is bounded below by 0");

    if tab.objective().is_positive() {
        // Infeasible. Dual values: reduced cost of artificial i is 1 − y_i.
        let mut farkas = Vec::with_capacity(m);
        for i in 0..m {
            let y = BigRational::one() - tab.cost[n + i].clone();
            farkas.push(&sigma[i] * &y);
        }
        debug_assert!(verify_farkas(lp, &farkas));
        return Ok(LpOutcome::Infeasible { farkas });
    }

    // Drive remaining artificials out of the basis; rows that cannot release
    // one are redundant and get dropped.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            let col = (0..n).find(|&j| !tab.rows[i][j].is_zero());
            match col {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2: install the real objective, priced out over the current basis.
    let mut cost = vec![BigRational::zero(); num_cols + 1];
    cost[..n].clone_from_slice(&lp.c);
    for (i, &bj) in tab.basis.iter().enumerate() {
        let cb = lp.c[bj].clone();
        if cb.is_zero() {
            continue;
        }
        let row = tab.rows[i].clone();
        for (cj, rj) in cost.iter_mut().zip(&row) {
            *cj = &*cj - &(&cb * rj);
        }
    }
    tab.cost = cost;

    let mut allowed = vec![true; num_cols];
    for a in allowed.iter_mut().skip(n) {
        *a = false;
    }
    if tab.run(&allowed).is_some() {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x = vec![BigRational::zero(); n];
    for (i, &bj) in tab.basis.iter().enumerate() {
        if bj < n {
            x[bj] = tab.rows[i][num_cols].clone();
        }
    }
    let objective = tab.objective();
    debug_assert_eq!(
        objective,
        lp.c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum::<BigRational>()
    );
    Ok(LpOutcome::Optimal { x, objective })
}

/// Checks `yᵀA ≤ 0` componentwise and `yᵀb > 0`.
pub fn verify_farkas(lp: &StandardLp, y: &[BigRational]) -> bool {
    let n = lp.c.len();
    for j in 0..n {
        let dot: BigRational = y.iter().zip(&lp.a).map(|(yi, row)| yi * &row[j]).sum();
        if dot.is_positive() {
            return false;
        }
    }
    let rhs: BigRational = y.iter().zip(&lp.b).map(|(yi, bi)| yi * bi).sum();
    rhs.is_positive()
}

/// Row sense for the builder interface.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum Sense {
    Eq,
    Le,
    Ge,
}

/// Assembles mixed-sense constraints over `x ≥ 0`, appending slack columns
/// internally. Solutions and Farkas certificates are reported against the
/// rows in the order added.
pub struct LpBuilder {
    num_vars: usize,
    c: Vec<BigRational>,
    rows: Vec<(Vec<BigRational>, Sense, BigRational)>,
}

impl LpBuilder {
    pub fn new(num_vars: usize) -> Self {
        LpBuilder {
            num_vars,
            c: vec![BigRational::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn set_objective(&mut self, c: Vec<BigRational>) {
        assert_eq!(c.len(), self.num_vars);
        self.c = c;
    }

    fn push(&mut self, coeffs: Vec<BigRational>, sense: Sense, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push((coeffs, sense, rhs));
    }

    pub fn add_eq(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        self.push(coeffs, Sense::Eq, rhs);
    }

    pub fn add_le(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        self.push(coeffs, Sense::Le, rhs);
    }

    pub fn add_ge(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        self.push(coeffs, Sense::Ge, rhs);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn standard_form(&self) -> StandardLp {
        let slacks: Vec<usize> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, (_, s, _))| *s != Sense::Eq)
            .map(|(i, _)| i)
            .collect();
        let n = self.num_vars + slacks.len();
        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        for (i, (coeffs, sense, rhs)) in self.rows.iter().enumerate() {
            let mut row = coeffs.clone();
            for &si in &slacks {
                let v = if si == i {
                    match sense {
                        Sense::Le => BigRational::one(),
                        Sense::Ge => -BigRational::one(),
                        Sense::Eq => unreachable!(),
                    }
                } else {
                    BigRational::zero()
                };
                row.push(v);
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let mut c = self.c.clone();
        c.resize(n, BigRational::zero());
        StandardLp { a, b, c }
    }

    /// Solves; `Optimal.x` is truncated to the declared variables.
    pub fn solve(&self) -> Result<LpOutcome> {
        match solve(&self.standard_form())? {
            LpOutcome::Optimal { mut x, objective } => {
                x.truncate(self.num_vars);
                Ok(LpOutcome::Optimal { x, objective })
            }
            other => Ok(other),
        }
    }
}
