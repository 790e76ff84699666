//! Randomized proportional deletion with dense-decomposition preprocessing.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::preprocess;
use crate::error::{Error, Result};
use crate::oracle::{density, restrict, top_marginals, CfBound, Oracle};
use crate::rational::{Cost, Rational};
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Size of the ground set after preprocessing.
    pub ground_size: usize,
    pub vertex: usize,
    /// `f(v | R - v) / c(v)`.
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomDeletionRun {
    pub seed: u64,
    pub epsilon: Rational,
    pub rho: Rational,
    pub cf: CfBound,
    /// `c_f (1 + eps) rho`.
    pub threshold: Rational,
    /// Zero-cost elements removed before sampling.
    pub free: VertexSet,
    pub trace: Vec<TraceStep>,
    pub deletion: VertexSet,
    pub cost: Rational,
    pub residual_density: Rational,
}

/// `c_f (1 + 1/eps)`, the expected-cost factor.
pub fn cost_factor(cf: &CfBound, eps: &Rational) -> Rational {
    &cf.value * (Rational::one() + eps.recip())
}

fn check_params(eps: &Rational, rho: &Rational, cf: &CfBound) -> Result<Rational> {
    if !eps.is_positive() {
        return Err(Error::InvalidEpsilon(format!("epsilon must be positive, got {eps}")));
    }
    if rho.is_negative() {
        return Err(Error::InvalidParameter("rho must be non-negative".into()));
    }
    if cf.value < Rational::one() {
        return Err(Error::InvalidParameter("c_f bound must be at least 1".into()));
    }
    Ok(&cf.value * (Rational::one() + eps) * rho)
}

/// Sampling weights `f(v | V - v) / c(v)` over the ground set of `f`.
pub fn sampling_weights(f: &Oracle, costs: &[Cost]) -> Result<Vec<(usize, Rational)>> {
    top_marginals(f.as_ref())
        .into_iter()
        .map(|(v, m)| match &costs[v] {
            Cost::Finite(c) if c.is_positive() => Ok((v, m / c)),
            _ => Err(Error::InvalidCost(v)),
        })
        .collect()
}

/// Index `i` of the first cumulative weight with `r / 2^64 < C_i / W`.
pub fn pick(weights: &[Rational], r: u64) -> Option<usize> {
    let total: Rational = weights.iter().sum();
    if !total.is_positive() {
        return None;
    }
    let scaled = Rational::from_integer(BigInt::from(r)) * &total;
    let two64 = BigInt::one() << 64;
    let mut acc = Rational::zero();
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if w.is_positive() && scaled < &acc * &two64 {
            return Some(i);
        }
    }
    None
}

pub fn random_delete(
    f: &Oracle,
    costs: &[Cost],
    rho: &Rational,
    eps: &Rational,
    cf: &CfBound,
    seed: u64,
) -> Result<RandomDeletionRun> {
    let threshold = check_params(eps, rho, cf)?;
    if costs.len() != f.universe() {
        return Err(Error::InvalidParameter("one cost per universe element required".into()));
    }
    let ground = f.ground().clone();
    let mut free = VertexSet::empty(f.universe());
    for v in ground.iter() {
        match &costs[v] {
            Cost::Infinite => return Err(Error::InvalidCost(v)),
            Cost::Finite(c) if c.is_zero() => free.insert(v),
            Cost::Finite(_) => {}
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deletion = free.clone();
    let mut cur = restrict(f, &ground.difference(&free))?;
    let mut trace = Vec::new();
    loop {
        if density(cur.as_ref())?.0 <= threshold {
            break;
        }
        let pre = preprocess(&cur, &threshold)?;
        if pre.r.is_empty() {
            return Err(Error::InvariantViolation(
                "preprocessing emptied a function denser than the threshold".into(),
            ));
        }
        let weights = sampling_weights(&pre.restricted, costs)?;
        let values: Vec<Rational> = weights.iter().map(|(_, w)| w.clone()).collect();
        let i = pick(&values, rng.next_u64()).ok_or_else(|| {
            Error::InvariantViolation("all sampling weights are zero".into())
        })?;
        let (v, weight) = weights[i].clone();
        trace.push(TraceStep {
            ground_size: pre.r.len(),
            vertex: v,
            weight,
        });
        deletion.insert(v);
        cur = restrict(&pre.restricted, &pre.r.without(v))?;
    }
    let residual = restrict(f, &ground.difference(&deletion))?;
    let residual_density = density(residual.as_ref())?.0;
    if residual_density > threshold {
        return Err(Error::InvariantViolation(format!(
            "residual density {residual_density} exceeds {threshold}"
        )));
    }
    let cost = deletion
        .iter()
        .map(|v| costs[v].as_finite().cloned().unwrap_or_default())
        .sum();
    Ok(RandomDeletionRun {
        seed,
        epsilon: eps.clone(),
        rho: rho.clone(),
        cf: cf.clone(),
        threshold,
        free,
        trace,
        deletion,
        cost,
        residual_density,
    })
}

/// Whether `Σ_{u ∈ X} f(u | V - u) >= Σ_{u ∈ V} f(u | V - u) / (c_f (1 + 1/eps))`
/// for a feasible deletion set `x`.
pub fn check_marginal_mass(
    f: &Oracle,
    rho: &Rational,
    eps: &Rational,
    cf: &CfBound,
    x: &VertexSet,
) -> Result<bool> {
    let threshold = check_params(eps, rho, cf)?;
    let marginals = top_marginals(f.as_ref());
    if let Some((v, m)) = marginals.iter().find(|(_, m)| m < &threshold) {
        return Err(Error::HypothesisViolated(format!(
            "f({v} | V - {v}) = {m} is below {threshold}"
        )));
    }
    let rest = restrict(f, &f.ground().difference(x))?;
    if &density(rest.as_ref())?.0 > rho {
        return Err(Error::NotFeasible("X leaves density above rho".into()));
    }
    let total: Rational = marginals.iter().map(|(_, m)| m).sum();
    let inside: Rational = marginals
        .iter()
        .filter(|(v, _)| x.contains(*v))
        .map(|(_, m)| m)
        .sum();
    Ok(inside * cost_factor(cf, eps) >= total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;
    use crate::oracle::graph_oracle;
    use crate::rational::{int, rat};

    fn k4() -> MultiGraph {
        MultiGraph::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn pick_is_exact() {
        let w = vec![int(1), int(0), int(3)];
        assert_eq!(pick(&w, 0), Some(0));
        assert_eq!(pick(&w, (1u64 << 62) - 1), Some(0));
        assert_eq!(pick(&w, 1u64 << 62), Some(2));
        assert_eq!(pick(&w, u64::MAX), Some(2));
        assert_eq!(pick(&[int(0)], 5), None);
    }

    #[test]
    fn triangle_needs_nothing() {
        let tri = MultiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let run = random_delete(
            &graph_oracle(&tri),
            tri.costs(),
            &int(1),
            &int(1),
            &CfBound::analytic(int(2)),
            7,
        )
        .unwrap();
        assert_eq!(run.threshold, int(4));
        assert!(run.deletion.is_empty());
        assert!(run.trace.is_empty());
        assert_eq!(cost_factor(&run.cf, &run.epsilon), int(4));
    }

    #[test]
    fn k4_run_is_feasible_and_reproducible() {
        let g = k4();
        let f = graph_oracle(&g);
        let cf = CfBound::analytic(int(2));
        for seed in 0..20 {
            let run = random_delete(&f, g.costs(), &rat(1, 4), &rat(1, 2), &cf, seed).unwrap();
            assert_eq!(run.threshold, rat(3, 4));
            assert!(!run.deletion.is_empty());
            assert!(run.residual_density <= rat(3, 4));
            assert_eq!(run.trace[0].ground_size, 4);
            assert_eq!(run.trace[0].weight, int(3));
            let again = random_delete(&f, g.costs(), &rat(1, 4), &rat(1, 2), &cf, seed).unwrap();
            assert_eq!(run, again);
        }
    }

    #[test]
    fn cost_validation() {
        let g = k4()
            .with_costs(vec![Cost::zero(), Cost::one(), Cost::one(), Cost::one()])
            .unwrap();
        let f = graph_oracle(&g);
        let cf = CfBound::analytic(int(2));
        let run = random_delete(&f, g.costs(), &int(1), &rat(1, 10), &cf, 1).unwrap();
        assert_eq!(run.free.to_vec(), vec![0]);
        assert!(run.deletion.contains(0));

        let mut costs = g.costs().to_vec();
        costs[2] = Cost::Infinite;
        assert_eq!(
            random_delete(&f, &costs, &int(1), &rat(1, 10), &cf, 1),
            Err(Error::InvalidCost(2))
        );
        assert!(matches!(
            random_delete(&f, g.costs(), &int(1), &int(0), &cf, 1),
            Err(Error::InvalidEpsilon(_))
        ));
    }

    #[test]
    fn marginal_mass_examples() {
        let g = k4();
        let f = graph_oracle(&g);
        let cf = CfBound::analytic(int(2));
        let all = VertexSet::full(4);
        assert_eq!(check_marginal_mass(&f, &rat(1, 4), &rat(1, 2), &cf, &all), Ok(true));
        assert!(matches!(
            check_marginal_mass(&f, &rat(1, 4), &rat(1, 2), &cf, &VertexSet::empty(4)),
            Err(Error::NotFeasible(_))
        ));
        assert!(matches!(
            check_marginal_mass(&f, &int(2), &rat(1, 2), &cf, &all),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
