//! Exact two-phase primal simplex over rationals with Bland's rule.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `min c·x` subject to linear constraints and `x >= 0`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<Rational>,
    pub objective: Rational,
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); vars],
            constraints: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) -> Result<()> {
        if let Some(&(j, _)) = coeffs.iter().find(|(j, _)| *j >= self.vars()) {
            return Err(Error::InvalidParameter(format!("LP variable {j} out of range")));
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Exact feasibility check of `x`.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.vars() || x.iter().any(Signed::is_negative) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs: Rational = c.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }

    pub fn solve(&self) -> LpSolution {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
    artificial_from: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.vars();
        let m = lp.constraints.len();
        let slacks = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let artificial_from = n + slacks;
        let cols = artificial_from + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = n;
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); cols];
            for (j, a) in &c.coeffs {
                row[*j] += a;
            }
            let mut b = c.rhs.clone();
            let mut rel = c.relation;
            if b.is_negative() {
                for a in row.iter_mut().take(n) {
                    *a = -a.clone();
                }
                b = -b;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            match rel {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                    row[artificial_from + i] = Rational::from_integer(1.into());
                    basis.push(artificial_from + i);
                }
                Relation::Eq => {
                    row[artificial_from + i] = Rational::from_integer(1.into());
                    basis.push(artificial_from + i);
                }
            }
            rows.push(row);
            rhs.push(b);
        }
        Tableau {
            rows,
            rhs,
            basis,
            cols,
            artificial_from,
        }
    }

    fn reduced_costs(&self, cost: &[Rational]) -> (Vec<Rational>, Rational) {
        let mut red = cost.to_vec();
        let mut value = Rational::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[r].iter().enumerate() {
                if !a.is_zero() {
                    red[j] -= cb * a;
                }
            }
            value += cb * &self.rhs[r];
        }
        (red, value)
    }

    fn pivot(&mut self, r: usize, c: usize, red: &mut [Rational], value: &mut Rational) {
        let p = self.rows[r][c].clone();
        for a in self.rows[r].iter_mut() {
            if !a.is_zero() {
                *a /= &p;
            }
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let nonzero: Vec<usize> = (0..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let k = self.rows[i][c].clone();
            for &j in &nonzero {
                let d = &k * &pivot_row[j];
                self.rows[i][j] -= d;
            }
            self.rhs[i] -= &k * &pivot_rhs;
        }
        let k = red[c].clone();
        if !k.is_zero() {
            for &j in &nonzero {
                red[j] -= &k * &pivot_row[j];
            }
            *value += &k * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Bland's rule. Returns false when unbounded.
    fn optimize(&mut self, red: &mut [Rational], value: &mut Rational, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| red[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, c, red, value);
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpSolution {
        let n = lp.vars();
        let mut phase1 = vec![Rational::zero(); self.cols];
        for a in phase1.iter_mut().skip(self.artificial_from) {
            *a = Rational::from_integer(1.into());
        }
        let (mut red, mut value) = self.reduced_costs(&phase1);
        self.optimize(&mut red, &mut value, self.cols);
        if value.is_positive() {
            return LpSolution {
                status: LpStatus::Infeasible,
                values: vec![Rational::zero(); n],
                objective: Rational::zero(),
            };
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.artificial_from {
                match (0..self.artificial_from).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(c) => {
                        let mut dummy = vec![Rational::zero(); self.cols];
                        let mut dv = Rational::zero();
                        self.pivot(r, c, &mut dummy, &mut dv);
                    }
                    None => {
                        self.rows.remove(r);
                        self.rhs.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        let mut phase2 = vec![Rational::zero(); self.cols];
        phase2[..n].clone_from_slice(&lp.objective);
        let (mut red, mut value) = self.reduced_costs(&phase2);
        let bounded = self.optimize(&mut red, &mut value, self.artificial_from);
        let mut values = vec![Rational::zero(); n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < n {
                values[b] = self.rhs[r].clone();
            }
        }
        LpSolution {
            status: if bounded {
                LpStatus::Optimal
            } else {
                LpStatus::Unbounded
            },
            objective: if bounded { value } else { Rational::zero() },
            values,
        }
    }
}
