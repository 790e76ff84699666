//! Seeded instance generators shared by the benchmarks.

use densdel::rational::rat;
use densdel::{Cost, Edge, MultiGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G(n, m)` multigraph with a few self-loops and costs in `[1/2, 4]`.
pub fn random_graph(n: usize, m: usize, seed: u64) -> MultiGraph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..m)
        .map(|_| {
            let u = r.gen_range(0..n);
            let v = if r.gen_bool(0.05) { u } else { r.gen_range(0..n) };
            Edge::new(u, v)
        })
        .collect();
    let costs = (0..n)
        .map(|_| Cost::finite(rat(r.gen_range(1..=8), 2)).expect("positive"))
        .collect();
    MultiGraph::new(n, edges, costs).expect("ids in range")
}
