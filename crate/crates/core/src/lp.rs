//! The orientation LP for density deletion and its threshold rounding.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::densest::density_or_zero;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::rational::{ceil, Cost, Rational};
use crate::set::VertexSet;
pub use crate::simplex::{LinearProgram, LpSolution, LpStatus, Relation};

/// Orientation variables of one edge: one per endpoint, a single one for a
/// self-loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeVars {
    Pair { toward_u: usize, toward_v: usize },
    Loop(usize),
}

/// Variables `x_u` occupy indices `0..n`; orientation variables follow.
#[derive(Clone, Debug)]
pub struct OrientationLp {
    pub lp: LinearProgram,
    pub rho: Rational,
    pub edge_vars: Vec<EdgeVars>,
}

impl OrientationLp {
    pub fn x(&self, solution: &LpSolution, u: usize) -> Rational {
        solution.values[u].clone()
    }
}

/// Orientation LP with explicit objective weights `weights[u]`.
///
/// A self-loop `e` at `u` gets the edge row `x_u + z_{e,u} >= 1` and counts
/// once toward the load of `u`.
pub fn build_orientation_lp_weighted(
    g: &MultiGraph,
    rho: &Rational,
    weights: &[Rational],
) -> Result<OrientationLp> {
    if rho.is_negative() {
        return Err(Error::InvalidParameter("rho must be non-negative".into()));
    }
    if weights.len() != g.n() {
        return Err(Error::InvalidParameter("one weight per vertex required".into()));
    }
    let n = g.n();
    let mut next = n;
    let mut edge_vars = Vec::with_capacity(g.m());
    for e in g.edges() {
        if e.is_loop() {
            edge_vars.push(EdgeVars::Loop(next));
            next += 1;
        } else {
            edge_vars.push(EdgeVars::Pair {
                toward_u: next,
                toward_v: next + 1,
            });
            next += 2;
        }
    }
    let mut lp = LinearProgram::new(next);
    lp.objective[..n].clone_from_slice(weights);
    let one = Rational::one;
    let mut load: Vec<Vec<(usize, Rational)>> = (0..n).map(|u| vec![(u, rho.clone())]).collect();
    for (e, vars) in g.edges().iter().zip(&edge_vars) {
        match *vars {
            EdgeVars::Pair { toward_u, toward_v } => {
                lp.add(
                    vec![(e.u, one()), (e.v, one()), (toward_u, one()), (toward_v, one())],
                    Relation::Ge,
                    one(),
                )?;
                load[e.u].push((toward_u, one()));
                load[e.v].push((toward_v, one()));
            }
            EdgeVars::Loop(z) => {
                lp.add(vec![(e.u, one()), (z, one())], Relation::Ge, one())?;
                load[e.u].push((z, one()));
            }
        }
    }
    for (u, row) in load.into_iter().enumerate() {
        lp.add(row, Relation::Le, rho.clone())?;
        lp.add(vec![(u, one())], Relation::Le, one())?;
    }
    Ok(OrientationLp {
        lp,
        rho: rho.clone(),
        edge_vars,
    })
}

/// Orientation LP weighted by the vertex costs of `g`, which must be finite.
pub fn build_orientation_lp(g: &MultiGraph, rho: &Rational) -> Result<OrientationLp> {
    let weights = g
        .costs()
        .iter()
        .enumerate()
        .map(|(u, c)| c.as_finite().cloned().ok_or(Error::NotFiniteCost(u)))
        .collect::<Result<Vec<_>>>()?;
    build_orientation_lp_weighted(g, rho, &weights)
}

pub fn solve_lp(lp: &OrientationLp) -> Result<LpSolution> {
    let sol = lp.lp.solve();
    if sol.status == LpStatus::Optimal && !lp.lp.satisfied_by(&sol.values) {
        return Err(Error::InvariantViolation("LP optimum violates a constraint".into()));
    }
    Ok(sol)
}

/// Finite stand-in for infinite costs: `(Σ finite costs)·⌈1/eps⌉ + 1`.
pub fn infinite_surrogate(g: &MultiGraph, eps: &Rational) -> Rational {
    let finite: Rational = g.costs().iter().filter_map(Cost::as_finite).sum();
    finite * ceil(&(Rational::one() / eps)) + Rational::one()
}

#[derive(Clone, Debug)]
pub struct RoundedSolution {
    pub deletion: VertexSet,
    pub lp_value: Rational,
    pub epsilon: Rational,
    pub x: Vec<Rational>,
    pub cost: Cost,
    pub residual_density: Rational,
    /// `rho / (1 - 2 eps)`.
    pub density_bound: Rational,
    /// `lp_value / eps`.
    pub cost_bound: Rational,
    pub density_ok: bool,
    pub cost_ok: bool,
    /// The scaled orientation `z / (1 - 2 eps)` certifies the residual.
    pub orientation_ok: bool,
    /// The rounded set contains an infinite-cost vertex.
    pub infeasible_with_finite_cost: bool,
}

/// Solve the orientation LP and delete every vertex with `x_u > eps`.
pub fn round_threshold(g: &MultiGraph, rho: &Rational, eps: &Rational) -> Result<RoundedSolution> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if !eps.is_positive() || eps >= &half {
        return Err(Error::InvalidEpsilon(format!(
            "epsilon must lie in (0, 1/2), got {eps}"
        )));
    }
    let surrogate = infinite_surrogate(g, eps);
    let weights: Vec<Rational> = g
        .costs()
        .iter()
        .map(|c| c.as_finite().cloned().unwrap_or_else(|| surrogate.clone()))
        .collect();
    let olp = build_orientation_lp_weighted(g, rho, &weights)?;
    let sol = solve_lp(&olp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::InvariantViolation(format!(
            "orientation LP reported {:?}",
            sol.status
        )));
    }
    let deletion = VertexSet::from_ids(g.n(), (0..g.n()).filter(|&u| &sol.values[u] > eps));
    let cost = g.cost_of(&deletion);
    let infeasible_with_finite_cost = !cost.is_finite();
    let surrogate_cost: Rational = deletion.iter().map(|u| weights[u].clone()).sum();

    let shrink = Rational::one() - eps * BigInt::from(2);
    let density_bound = rho / &shrink;
    let cost_bound = &sol.objective / eps;
    let residual = g.delete(&deletion)?;
    let residual_density = density_or_zero(&residual)?;
    let density_ok = residual_density <= density_bound;
    let cost_ok = surrogate_cost <= cost_bound;
    let orientation_ok = scaled_orientation_ok(g, &olp, &sol, &deletion, &shrink, &density_bound);
    if !(density_ok && cost_ok && orientation_ok) {
        return Err(Error::InvariantViolation(format!(
            "rounding guarantee failed (density {density_ok}, cost {cost_ok}, orientation {orientation_ok})"
        )));
    }
    Ok(RoundedSolution {
        deletion,
        lp_value: sol.objective.clone(),
        epsilon: eps.clone(),
        x: sol.values[..g.n()].to_vec(),
        cost,
        residual_density,
        density_bound,
        cost_bound,
        density_ok,
        cost_ok,
        orientation_ok,
        infeasible_with_finite_cost,
    })
}

fn scaled_orientation_ok(
    g: &MultiGraph,
    olp: &OrientationLp,
    sol: &LpSolution,
    deleted: &VertexSet,
    shrink: &Rational,
    bound: &Rational,
) -> bool {
    let z = |j: usize| &sol.values[j] / shrink;
    let mut load = vec![Rational::zero(); g.n()];
    for (e, vars) in g.edges().iter().zip(&olp.edge_vars) {
        if deleted.contains(e.u) || deleted.contains(e.v) {
            continue;
        }
        match *vars {
            EdgeVars::Pair { toward_u, toward_v } => {
                let (a, b) = (z(toward_u), z(toward_v));
                if &a + &b < Rational::one() {
                    return false;
                }
                load[e.u] += a;
                load[e.v] += b;
            }
            EdgeVars::Loop(j) => {
                let a = z(j);
                if a < Rational::one() {
                    return false;
                }
                load[e.u] += a;
            }
        }
    }
    load.iter().all(|l| l <= bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn k4() -> MultiGraph {
        MultiGraph::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn triangle() -> MultiGraph {
        MultiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn variable_layout() {
        let g = MultiGraph::unit(2, &[(0, 1), (1, 1)]).unwrap();
        let olp = build_orientation_lp(&g, &int(1)).unwrap();
        assert_eq!(olp.lp.vars(), 2 + 2 + 1);
        assert_eq!(olp.lp.constraints.len(), 2 + 2 * 2);
    }

    #[test]
    fn lp_examples() {
        let edge = MultiGraph::unit(2, &[(0, 1)])
            .unwrap()
            .with_costs(vec![Cost::one(), Cost::finite(int(3)).unwrap()])
            .unwrap();
        let sol = solve_lp(&build_orientation_lp(&edge, &int(0)).unwrap()).unwrap();
        assert_eq!(sol.objective, int(1));
        assert_eq!(&sol.values[..2], &[int(1), int(0)]);

        let sol = solve_lp(&build_orientation_lp(&triangle(), &int(1)).unwrap()).unwrap();
        assert_eq!(sol.objective, int(0));

        let sol = solve_lp(&build_orientation_lp(&k4(), &int(1)).unwrap()).unwrap();
        assert!(sol.objective.is_positive());

        let empty = MultiGraph::unit(3, &[]).unwrap();
        let sol = solve_lp(&build_orientation_lp(&empty, &int(1)).unwrap()).unwrap();
        assert_eq!(sol.objective, int(0));
        assert!(sol.values.iter().all(Zero::is_zero));
    }

    #[test]
    fn rounding_examples() {
        for eps in [rat(1, 8), rat(1, 4), rat(3, 8)] {
            let r = round_threshold(&triangle(), &int(1), &eps).unwrap();
            assert!(r.deletion.is_empty());
            assert_eq!(r.residual_density, int(1));
        }
        let r = round_threshold(&k4(), &int(1), &rat(1, 4)).unwrap();
        assert!(r.residual_density <= int(2));
        assert_eq!(r.density_bound, int(2));
        assert_eq!(r.cost_bound, &r.lp_value * BigInt::from(4));
        assert!(r.cost.as_finite().unwrap() <= &(&r.lp_value * BigInt::from(4)));
        for bad in [int(0), rat(1, 2), int(1), rat(-1, 4)] {
            assert!(matches!(
                round_threshold(&k4(), &int(1), &bad),
                Err(Error::InvalidEpsilon(_))
            ));
        }
    }

    #[test]
    fn loops_force_deletion() {
        // Three loops at one vertex have density 3.
        let g = MultiGraph::unit(1, &[(0, 0), (0, 0), (0, 0)]).unwrap();
        let sol = solve_lp(&build_orientation_lp(&g, &int(2)).unwrap()).unwrap();
        assert_eq!(sol.objective, int(1));
        let r = round_threshold(&g, &int(2), &rat(1, 4)).unwrap();
        assert_eq!(r.deletion.len(), 1);
    }

    #[test]
    fn infinite_costs_use_surrogate() {
        let g = MultiGraph::unit(2, &[(0, 1), (0, 0), (1, 1)])
            .unwrap()
            .with_costs(vec![Cost::Infinite, Cost::one()])
            .unwrap();
        assert_eq!(infinite_surrogate(&g, &rat(1, 4)), int(5));
        let r = round_threshold(&g, &int(1), &rat(1, 4)).unwrap();
        assert_eq!(r.deletion.to_vec(), vec![1]);
        assert!(!r.infeasible_with_finite_cost);
        assert!(build_orientation_lp(&g, &int(1)).is_err());
    }
}
