//! Evaluation oracles for normalized, non-decreasing supermodular functions.
//!
//! An oracle lives on a fixed universe `{0, .., n-1}` and is defined on a
//! ground set inside it; restriction and contraction shrink the ground set
//! while keeping element ids stable.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::densest::{hyper_excess, search_density};
use crate::error::{Error, Result};
use crate::graph::{Hypergraph, MultiGraph, VertexId};
use crate::rational::{int, Rational};
use crate::set::VertexSet;
use crate::size_cap;

/// Default cap on exhaustive excess maximization.
pub const EXCESS_CAP: usize = 18;
/// Default cap on exhaustive `c_f` computation.
pub const CF_CAP: usize = 14;

pub trait SupermodOracle: Send + Sync + fmt::Debug {
    fn universe(&self) -> usize;

    fn ground(&self) -> &VertexSet;

    /// `f(s)` for `s ⊆ ground`.
    fn eval(&self, s: &VertexSet) -> Rational;

    /// Whether `native_excess` is implemented.
    fn fast_excess(&self) -> bool {
        false
    }

    /// `max{f(Z) - rho·|Z| : Z ⊆ within}` with its maximal maximizer.
    fn native_excess(&self, _rho: &Rational, _within: &VertexSet) -> Option<Result<(Rational, VertexSet)>> {
        None
    }

    /// Every value of `f` is an integer multiple of `1 / value_denominator`.
    fn value_denominator(&self) -> BigInt {
        BigInt::one()
    }

    /// Family-specific upper bound on `c_f`.
    fn analytic_cf(&self) -> Option<Rational> {
        None
    }

    fn native_restrict(&self, _keep: &VertexSet) -> Option<Oracle> {
        None
    }

    fn native_contract(&self, _base: &VertexSet) -> Option<Oracle> {
        None
    }
}

pub type Oracle = Arc<dyn SupermodOracle>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfProvenance {
    Analytic,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfBound {
    pub value: Rational,
    pub provenance: CfProvenance,
}

impl CfBound {
    pub fn analytic(value: Rational) -> Self {
        CfBound {
            value,
            provenance: CfProvenance::Analytic,
        }
    }

    /// The family bound of `f`, if it has one.
    pub fn of(f: &dyn SupermodOracle) -> Option<Self> {
        f.analytic_cf().map(CfBound::analytic)
    }
}

fn check_subset(f: &dyn SupermodOracle, s: &VertexSet) -> Result<()> {
    if s.universe() != f.universe() {
        return Err(Error::InvalidVertex(s.universe().max(f.universe())));
    }
    if let Some(v) = s.difference(f.ground()).iter().next() {
        return Err(Error::InvalidVertex(v));
    }
    Ok(())
}

/// `f(v | s) = f(s + v) - f(s)`.
pub fn marginal(f: &dyn SupermodOracle, v: VertexId, s: &VertexSet) -> Result<Rational> {
    check_subset(f, s)?;
    if v >= f.universe() || !f.ground().contains(v) {
        return Err(Error::InvalidVertex(v));
    }
    if s.contains(v) {
        return Err(Error::InvalidMarginal(v));
    }
    Ok(f.eval(&s.with(v)) - f.eval(s))
}

/// `f(v | ground - v)` for every ground element, in ascending id order.
pub fn top_marginals(f: &dyn SupermodOracle) -> Vec<(VertexId, Rational)> {
    let ground = f.ground();
    let total = f.eval(ground);
    ground
        .iter()
        .map(|v| (v, &total - f.eval(&ground.without(v))))
        .collect()
}

/// Exhaustive excess maximization over subsets of `within`.
pub fn exhaustive_excess(
    f: &dyn SupermodOracle,
    rho: &Rational,
    within: &VertexSet,
) -> Result<(Rational, VertexSet)> {
    let members: Vec<VertexId> = within.iter().collect();
    let cap = size_cap(EXCESS_CAP);
    if members.len() > cap {
        return Err(Error::TooLarge {
            size: members.len(),
            cap,
        });
    }
    let mut best = Rational::zero();
    let mut best_set = VertexSet::empty(f.universe());
    for mask in 1u64..(1u64 << members.len()) {
        let z = VertexSet::from_mask(f.universe(), &members, mask);
        let value = f.eval(&z) - rho * BigInt::from(z.len());
        // Prefer larger maximizers: for supermodular f the union of all
        // maximizers is itself a maximizer, so the largest one is maximal.
        if value > best || (value == best && z.len() > best_set.len()) {
            best = value;
            best_set = z;
        }
    }
    Ok((best, best_set))
}

/// `max{f(Z) - rho·|Z| : Z ⊆ within}` with its maximal maximizer.
pub fn excess_max(
    f: &dyn SupermodOracle,
    rho: &Rational,
    within: &VertexSet,
) -> Result<(Rational, VertexSet)> {
    check_subset(f, within)?;
    if rho.is_negative() {
        return Err(Error::InvalidParameter("rho must be non-negative".into()));
    }
    match f.native_excess(rho, within) {
        Some(r) => r,
        None => exhaustive_excess(f, rho, within),
    }
}

/// Maximum density `λ*_f = max f(S)/|S|` over the ground set, with the
/// maximal densest set. An empty ground set has density zero.
pub fn density(f: &dyn SupermodOracle) -> Result<(Rational, VertexSet)> {
    let ground = f.ground().clone();
    if ground.is_empty() {
        return Ok((Rational::zero(), ground));
    }
    let denom = f.value_denominator() * BigInt::from(ground.len());
    let upper = f.eval(&ground).max(Rational::one());
    search_density(&denom, upper, |rho| excess_max(f, rho, &ground))
}

#[derive(Debug)]
struct Restricted {
    inner: Oracle,
    ground: VertexSet,
}

impl SupermodOracle for Restricted {
    fn universe(&self) -> usize {
        self.inner.universe()
    }
    fn ground(&self) -> &VertexSet {
        &self.ground
    }
    fn eval(&self, s: &VertexSet) -> Rational {
        self.inner.eval(s)
    }
    fn fast_excess(&self) -> bool {
        self.inner.fast_excess()
    }
    fn native_excess(&self, rho: &Rational, within: &VertexSet) -> Option<Result<(Rational, VertexSet)>> {
        self.inner.native_excess(rho, within)
    }
    fn value_denominator(&self) -> BigInt {
        self.inner.value_denominator()
    }
    fn analytic_cf(&self) -> Option<Rational> {
        // The defining maximum only ranges over fewer sets.
        self.inner.analytic_cf()
    }
}

#[derive(Debug)]
struct Contracted {
    inner: Oracle,
    base: VertexSet,
    base_value: Rational,
    ground: VertexSet,
}

impl SupermodOracle for Contracted {
    fn universe(&self) -> usize {
        self.inner.universe()
    }
    fn ground(&self) -> &VertexSet {
        &self.ground
    }
    fn eval(&self, s: &VertexSet) -> Rational {
        self.inner.eval(&self.base.union(s)) - &self.base_value
    }
    fn value_denominator(&self) -> BigInt {
        self.inner.value_denominator()
    }
}

/// `f|_keep`.
pub fn restrict(f: &Oracle, keep: &VertexSet) -> Result<Oracle> {
    check_subset(f.as_ref(), keep)?;
    if let Some(g) = f.native_restrict(keep) {
        return Ok(g);
    }
    Ok(Arc::new(Restricted {
        inner: f.clone(),
        ground: keep.clone(),
    }))
}

/// `f_{/base}(X) = f(base ∪ X) - f(base)` on `ground - base`.
pub fn contract(f: &Oracle, base: &VertexSet) -> Result<Oracle> {
    check_subset(f.as_ref(), base)?;
    if let Some(g) = f.native_contract(base) {
        return Ok(g);
    }
    Ok(Arc::new(Contracted {
        inner: f.clone(),
        base: base.clone(),
        base_value: f.eval(base),
        ground: f.ground().difference(base),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeFamily {
    Graph,
    Hypergraph { rank: usize },
}

/// Induced (hyper)edge counting `f(S) = #{e : e ⊆ S}`. Closed under
/// restriction and contraction, so excess maximization stays flow-based.
#[derive(Clone, Debug)]
pub struct EdgeCountOracle {
    universe: usize,
    ground: VertexSet,
    edges: Vec<Vec<VertexId>>,
    family: EdgeFamily,
}

impl EdgeCountOracle {
    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }
}

impl SupermodOracle for EdgeCountOracle {
    fn universe(&self) -> usize {
        self.universe
    }
    fn ground(&self) -> &VertexSet {
        &self.ground
    }
    fn eval(&self, s: &VertexSet) -> Rational {
        let count = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| s.contains(v)))
            .count();
        Rational::from_integer(BigInt::from(count))
    }
    fn fast_excess(&self) -> bool {
        true
    }
    fn native_excess(&self, rho: &Rational, within: &VertexSet) -> Option<Result<(Rational, VertexSet)>> {
        Some(hyper_excess(
            self.universe,
            self.edges.iter().map(Vec::as_slice),
            rho,
            within,
        ))
    }
    fn analytic_cf(&self) -> Option<Rational> {
        Some(match self.family {
            EdgeFamily::Graph => int(2),
            EdgeFamily::Hypergraph { rank } => int(rank.max(1) as i64),
        })
    }
    fn native_restrict(&self, keep: &VertexSet) -> Option<Oracle> {
        Some(Arc::new(EdgeCountOracle {
            universe: self.universe,
            ground: keep.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| e.iter().all(|&v| keep.contains(v)))
                .cloned()
                .collect(),
            family: self.family,
        }))
    }
    fn native_contract(&self, base: &VertexSet) -> Option<Oracle> {
        // An edge not inside `base` is counted in f(base ∪ X) - f(base)
        // exactly when its part outside `base` lies in X.
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.iter().all(|&v| base.contains(v)))
            .map(|e| e.iter().copied().filter(|&v| !base.contains(v)).collect())
            .collect();
        Some(Arc::new(EdgeCountOracle {
            universe: self.universe,
            ground: self.ground.difference(base),
            edges,
            family: self.family,
        }))
    }
}

/// `f(S) = |E(S)|`.
pub fn graph_oracle(g: &MultiGraph) -> Oracle {
    Arc::new(EdgeCountOracle {
        universe: g.n(),
        ground: g.vertices(),
        edges: Hypergraph::from_graph(g).edges().to_vec(),
        family: EdgeFamily::Graph,
    })
}

/// `f(S)` = number of hyperedges inside `S`.
pub fn hypergraph_oracle(h: &Hypergraph) -> Oracle {
    Arc::new(EdgeCountOracle {
        universe: h.n(),
        ground: VertexSet::full(h.n()),
        edges: h.edges().to_vec(),
        family: EdgeFamily::Hypergraph { rank: h.rank() },
    })
}

/// `f(S) = Σ_{u ∈ S} d_S(u)^p`.
#[derive(Clone, Debug)]
pub struct PMeanOracle {
    universe: usize,
    ground: VertexSet,
    edges: Vec<(VertexId, VertexId)>,
    p: u32,
}

impl SupermodOracle for PMeanOracle {
    fn universe(&self) -> usize {
        self.universe
    }
    fn ground(&self) -> &VertexSet {
        &self.ground
    }
    fn eval(&self, s: &VertexSet) -> Rational {
        let mut deg = vec![0u64; self.universe];
        for &(u, v) in &self.edges {
            if s.contains(u) && s.contains(v) {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let total: BigInt = s.iter().map(|u| BigInt::from(deg[u]).pow(self.p)).sum();
        Rational::from_integer(total)
    }
    fn analytic_cf(&self) -> Option<Rational> {
        Some(Rational::from_integer(BigInt::from(self.p + 1).pow(self.p)))
    }
}

pub fn pmean_oracle(g: &MultiGraph, p: u32) -> Result<Oracle> {
    if g.has_loops() {
        return Err(Error::UnsupportedSelfLoop);
    }
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    Ok(Arc::new(PMeanOracle {
        universe: g.n(),
        ground: g.vertices(),
        edges: g.edges().iter().map(|e| (e.u, e.v)).collect(),
        p,
    }))
}

/// Exact `c_f = max_{S : f(S) > 0} Σ_{u ∈ S} f(u | S - u) / f(S)`, or 1 when
/// `f` vanishes on the whole ground set.
pub fn cf_bruteforce(f: &dyn SupermodOracle) -> Result<CfBound> {
    let members: Vec<VertexId> = f.ground().iter().collect();
    let cap = size_cap(CF_CAP);
    if members.len() > cap {
        return Err(Error::TooLarge {
            size: members.len(),
            cap,
        });
    }
    let mut best = Rational::one();
    for mask in 1u64..(1u64 << members.len()) {
        let s = VertexSet::from_mask(f.universe(), &members, mask);
        let fs = f.eval(&s);
        if !fs.is_positive() {
            continue;
        }
        let sum: Rational = s.iter().map(|u| &fs - f.eval(&s.without(u))).sum();
        let ratio = sum / &fs;
        if ratio > best {
            best = ratio;
        }
    }
    Ok(CfBound {
        value: best,
        provenance: CfProvenance::BruteForce,
    })
}

/// Modular oracle `f(S) = Σ_{v ∈ S} w(v)`; handy as a `c_f = 1` reference.
#[derive(Clone, Debug)]
pub struct ModularOracle {
    ground: VertexSet,
    weights: Vec<Rational>,
}

pub fn modular_oracle(weights: Vec<Rational>) -> Result<Oracle> {
    if weights.iter().any(Signed::is_negative) {
        return Err(Error::InvalidParameter("modular weights must be non-negative".into()));
    }
    Ok(Arc::new(ModularOracle {
        ground: VertexSet::full(weights.len()),
        weights,
    }))
}

impl SupermodOracle for ModularOracle {
    fn universe(&self) -> usize {
        self.weights.len()
    }
    fn ground(&self) -> &VertexSet {
        &self.ground
    }
    fn eval(&self, s: &VertexSet) -> Rational {
        s.iter().map(|v| &self.weights[v]).sum()
    }
    fn value_denominator(&self) -> BigInt {
        self.weights
            .iter()
            .fold(BigInt::one(), |acc, w| num_integer::lcm(acc, w.denom().clone()))
    }
    fn analytic_cf(&self) -> Option<Rational> {
        Some(Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn k4() -> MultiGraph {
        MultiGraph::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn triangle() -> MultiGraph {
        MultiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn graph_oracle_examples() {
        let f = graph_oracle(&k4());
        assert_eq!(f.eval(f.ground()), int(6));
        assert_eq!(f.eval(&VertexSet::from_ids(4, [0, 1, 2])), int(3));
        assert_eq!(f.eval(&VertexSet::empty(4)), int(0));
        assert_eq!(CfBound::of(f.as_ref()).unwrap().value, int(2));
        assert!(f.fast_excess());
    }

    #[test]
    fn hypergraph_oracle_examples() {
        let h = Hypergraph::unit(3, vec![vec![0, 1, 2]]).unwrap();
        let f = hypergraph_oracle(&h);
        assert_eq!(f.eval(&VertexSet::full(3)), int(1));
        assert_eq!(f.eval(&VertexSet::from_ids(3, [0, 1])), int(0));
        assert_eq!(f.eval(&VertexSet::empty(3)), int(0));
        assert_eq!(f.analytic_cf().unwrap(), int(3));
    }

    #[test]
    fn pmean_examples() {
        let t = triangle();
        let f1 = pmean_oracle(&t, 1).unwrap();
        let g = graph_oracle(&t);
        for mask in 0..8u64 {
            let s = VertexSet::from_mask(3, &[0, 1, 2], mask);
            assert_eq!(f1.eval(&s), g.eval(&s) * BigInt::from(2));
        }
        let f2 = pmean_oracle(&t, 2).unwrap();
        assert_eq!(f2.eval(&VertexSet::full(3)), int(12));
        assert_eq!(f2.analytic_cf().unwrap(), int(9));
        assert_eq!(
            marginal(f2.as_ref(), 0, &VertexSet::from_ids(3, [1, 2])).unwrap(),
            int(10)
        );
        let looped = MultiGraph::unit(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(pmean_oracle(&looped, 2).unwrap_err(), Error::UnsupportedSelfLoop);
    }

    #[test]
    fn marginal_examples() {
        let f = graph_oracle(&k4());
        let rest = VertexSet::from_ids(4, [1, 2, 3]);
        assert_eq!(marginal(f.as_ref(), 0, &rest).unwrap(), int(3));
        assert_eq!(
            marginal(f.as_ref(), 2, &VertexSet::empty(4)).unwrap(),
            f.eval(&VertexSet::from_ids(4, [2]))
        );
        assert_eq!(marginal(f.as_ref(), 1, &rest), Err(Error::InvalidMarginal(1)));
    }

    #[test]
    fn cf_examples() {
        let loops = MultiGraph::unit(3, &[(0, 0), (1, 1), (1, 1), (2, 2)]).unwrap();
        assert_eq!(cf_bruteforce(graph_oracle(&loops).as_ref()).unwrap().value, int(1));
        let edge = MultiGraph::unit(2, &[(0, 1)]).unwrap();
        assert_eq!(cf_bruteforce(graph_oracle(&edge).as_ref()).unwrap().value, int(2));
        let m = modular_oracle(vec![rat(1, 2), int(3)]).unwrap();
        assert_eq!(cf_bruteforce(m.as_ref()).unwrap().value, int(1));

        let big = MultiGraph::unit(20, &[]).unwrap();
        assert!(matches!(
            cf_bruteforce(graph_oracle(&big).as_ref()),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn contraction_and_restriction_agree_with_wrappers() {
        let g = MultiGraph::unit(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 4)]).unwrap();
        let f = graph_oracle(&g);
        let base = VertexSet::from_ids(5, [0, 2]);
        let native = contract(&f, &base).unwrap();
        let wrapped: Oracle = Arc::new(Contracted {
            inner: f.clone(),
            base: base.clone(),
            base_value: f.eval(&base),
            ground: f.ground().difference(&base),
        });
        let rest: Vec<usize> = native.ground().iter().collect();
        for mask in 0..(1u64 << rest.len()) {
            let x = VertexSet::from_mask(5, &rest, mask);
            assert_eq!(native.eval(&x), wrapped.eval(&x));
        }
        for rho in [int(0), rat(1, 2), int(1), rat(5, 3)] {
            let within = native.ground().clone();
            assert_eq!(
                excess_max(native.as_ref(), &rho, &within).unwrap(),
                exhaustive_excess(wrapped.as_ref(), &rho, &within).unwrap()
            );
        }
        let keep = VertexSet::from_ids(5, [1, 2, 3, 4]);
        let r = restrict(&f, &keep).unwrap();
        assert_eq!(r.eval(&keep), int(4));
        assert!(restrict(&r, &VertexSet::from_ids(5, [0])).is_err());
    }

    #[test]
    fn density_of_oracles() {
        let (l, w) = density(graph_oracle(&k4()).as_ref()).unwrap();
        assert_eq!(l, rat(3, 2));
        assert_eq!(w.len(), 4);
        let f2 = pmean_oracle(&triangle(), 2).unwrap();
        assert_eq!(density(f2.as_ref()).unwrap().0, int(4));
        let m = modular_oracle(vec![rat(1, 2), rat(1, 3)]).unwrap();
        let (l, w) = density(m.as_ref()).unwrap();
        assert_eq!(l, rat(1, 2));
        assert_eq!(w.to_vec(), vec![0]);
    }
}
