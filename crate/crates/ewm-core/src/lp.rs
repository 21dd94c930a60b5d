//! Exact two-phase simplex over the rationals.
//!
//! Solves `min c.x` subject to linear constraints and `x >= 0`. Bland's rule
//! is used for both entering and leaving variables, so the method terminates
//! without any perturbation.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::linalg::{axpy, zeros, Q};

/// Relation of a constraint row to its right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    /// `a.x >= b`
    Ge,
    /// `a.x = b`
    Eq,
    /// `a.x <= b`
    Le,
}

/// One linear constraint `coeffs . x  rel  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    /// Coefficients, one per variable.
    pub coeffs: Vec<Q>,
    /// Relation.
    pub rel: Rel,
    /// Right-hand side.
    pub rhs: Q,
}

impl Constraint {
    /// Builds a constraint.
    pub fn new(coeffs: Vec<Q>, rel: Rel, rhs: Q) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

/// Result of a linear program.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    /// No point satisfies the constraints.
    Infeasible,
    /// The objective is unbounded below on the feasible region.
    Unbounded,
    /// An optimal vertex and its objective value.
    Optimal {
        /// Optimal point.
        x: Vec<Q>,
        /// Objective value at `x`.
        value: Q,
    },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, cost: &mut [Q], cost_val: &mut Q) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = -self.rows[i][c].clone();
                axpy(&mut self.rows[i], &f, &prow);
                self.rhs[i] += &f * &prhs;
            }
        }
        if !cost[c].is_zero() {
            let f = -cost[c].clone();
            axpy(cost, &f, &prow);
            *cost_val += &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Runs the simplex loop on the reduced-cost row `cost`, allowing only
    /// columns flagged in `allowed` to enter. Returns false when unbounded.
    fn run(&mut self, cost: &mut [Q], cost_val: &mut Q, allowed: &[bool]) -> bool {
        loop {
            let Some(c) = (0..cost.len()).find(|&j| allowed[j] && cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][c].is_positive() {
                    let ratio = &self.rhs[r] / &self.rows[r][c];
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => {
                            ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                        }
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, cost, cost_val);
        }
    }

    fn reduced_costs(&self, c: &[Q]) -> (Vec<Q>, Q) {
        let mut cost = c.to_vec();
        let mut val = Q::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() {
                let f = -cost[b].clone();
                axpy(&mut cost, &f, &self.rows[r]);
                val += &f * &self.rhs[r];
            }
        }
        (cost, val)
    }
}

/// Minimizes `objective . x` over `x >= 0` (with `n` variables) subject to
/// `constraints`.
pub fn minimize(n: usize, objective: &[Q], constraints: &[Constraint]) -> LpOutcome {
    let m = constraints.len();
    let n_slack = constraints.iter().filter(|c| c.rel != Rel::Eq).count();
    let n_art = m;
    let ncols = n + n_slack + n_art;
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
    };
    let mut slack = n;
    for (i, con) in constraints.iter().enumerate() {
        let flip = con.rhs.is_negative();
        let sign = if flip { -Q::one() } else { Q::one() };
        let mut row = zeros(ncols);
        for (j, a) in con.coeffs.iter().enumerate() {
            row[j] = &sign * a;
        }
        let rel = match (con.rel, flip) {
            (Rel::Ge, true) => Rel::Le,
            (Rel::Le, true) => Rel::Ge,
            (r, _) => r,
        };
        match rel {
            Rel::Ge => {
                row[slack] = -Q::one();
                slack += 1;
            }
            Rel::Le => {
                row[slack] = Q::one();
                slack += 1;
            }
            Rel::Eq => {}
        }
        row[n + n_slack + i] = Q::one();
        tab.rows.push(row);
        tab.rhs.push(&sign * &con.rhs);
        tab.basis.push(n + n_slack + i);
    }

    let is_art = |j: usize| j >= n + n_slack;
    let mut phase1 = zeros(ncols);
    for j in n + n_slack..ncols {
        phase1[j] = Q::one();
    }
    let (mut cost, mut val) = tab.reduced_costs(&phase1);
    let all = vec![true; ncols];
    tab.run(&mut cost, &mut val, &all);
    if !val.is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificial variables (all at value zero) out of the basis.
    let mut r = 0;
    while r < tab.rows.len() {
        if is_art(tab.basis[r]) {
            if let Some(c) = (0..n + n_slack).find(|&j| !tab.rows[r][j].is_zero()) {
                let mut dummy = zeros(ncols);
                let mut dv = Q::zero();
                tab.pivot(r, c, &mut dummy, &mut dv);
            } else {
                tab.rows.remove(r);
                tab.rhs.remove(r);
                tab.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }

    let mut phase2 = zeros(ncols);
    for (j, c) in objective.iter().enumerate() {
        phase2[j] = c.clone();
    }
    let (mut cost, mut val) = tab.reduced_costs(&phase2);
    let allowed: Vec<bool> = (0..ncols).map(|j| !is_art(j)).collect();
    if !tab.run(&mut cost, &mut val, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = zeros(n);
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs[r].clone();
        }
    }
    LpOutcome::Optimal { x, value: -val }
}

/// Finds some `x >= 0` satisfying `constraints`, if one exists.
pub fn find_feasible(n: usize, constraints: &[Constraint]) -> Option<Vec<Q>> {
    match minimize(n, &zeros(n), constraints) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
