#![allow(dead_code)]

use densdel::gadgets::SetCoverInstance;
use densdel::rational::{int, rat};
use densdel::{Cost, Edge, Hypergraph, MultiGraph, Rational, VertexSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Multigraph on `1..=max_n` vertices, self-loops and parallel edges allowed.
pub fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m)
            .prop_map(move |pairs| MultiGraph::unit(n, &pairs).unwrap())
    })
}

pub fn arb_loopless_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let pairs: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            MultiGraph::unit(n, &pairs).unwrap()
        })
    })
}

pub fn arb_hypergraph(max_n: usize, max_m: usize, rank: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(0..n, 1..=rank), 0..=max_m)
            .prop_map(move |edges| Hypergraph::unit(n, edges).unwrap())
    })
}

/// Costs in `{1/4, 1/2, .., 3}`.
pub fn arb_costs(n: usize) -> impl Strategy<Value = Vec<Cost>> {
    proptest::collection::vec(1i64..=12, n)
        .prop_map(|v| v.into_iter().map(|k| Cost::finite(rat(k, 4)).unwrap()).collect())
}

pub fn arb_rho() -> impl Strategy<Value = Rational> {
    (0i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, max_m: usize, loops: bool) -> MultiGraph {
    let m = if loops || n >= 2 { rng.gen_range(0..=max_m) } else { 0 };
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if loops || u != v {
            edges.push(Edge::new(u, v));
        }
    }
    MultiGraph::new(n, edges, vec![Cost::one(); n]).unwrap()
}

pub fn random_costs<R: Rng>(rng: &mut R, n: usize) -> Vec<Cost> {
    (0..n)
        .map(|_| Cost::finite(rat(rng.gen_range(1..=12), rng.gen_range(1..=4))).unwrap())
        .collect()
}

pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, max_m: usize, rank: usize) -> Hypergraph {
    let m = rng.gen_range(0..=max_m);
    let edges = (0..m)
        .map(|_| {
            let k = rng.gen_range(1..=rank.min(n));
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            vs.truncate(k);
            vs
        })
        .collect();
    Hypergraph::unit(n, edges).unwrap()
}

/// Set Cover with `sets` sets over `universe` elements, every element in
/// exactly `freq` sets.
pub fn random_uniform_set_cover<R: Rng>(rng: &mut R, universe: usize, sets: usize, freq: usize) -> SetCoverInstance {
    let mut members = vec![Vec::new(); sets];
    for e in 0..universe {
        let mut ids: Vec<usize> = (0..sets).collect();
        ids.shuffle(rng);
        for &s in &ids[..freq] {
            members[s].push(e);
        }
    }
    let costs = (0..sets).map(|_| Cost::finite(int(rng.gen_range(1..=5))).unwrap()).collect();
    SetCoverInstance::new(universe, members, costs).unwrap()
}

pub fn all_subsets(universe: usize, members: &[usize]) -> Vec<VertexSet> {
    (0..1u64 << members.len())
        .map(|mask| VertexSet::from_mask(universe, members, mask))
        .collect()
}

pub fn subsets_of(s: &VertexSet) -> Vec<VertexSet> {
    let members: Vec<usize> = s.iter().collect();
    all_subsets(s.universe(), &members)
}
