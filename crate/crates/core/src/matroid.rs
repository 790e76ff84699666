//! Pseudoforest matroids, their unions, and the dual-rank cover function.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::cover::SubmodFn;
use crate::densest::check_density_integral;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::rational::Rational;
use crate::set::{EdgeSet, VertexSet};

/// A matroid on the edge ids `0..ground_size()` of a host graph.
pub trait RankOracle: Send + Sync + fmt::Debug {
    fn ground_size(&self) -> usize;
    fn rank(&self, edges: &EdgeSet) -> usize;
}

fn check_edges(g: &MultiGraph, edges: &EdgeSet) -> Result<()> {
    if edges.universe() != g.m() {
        return Err(Error::InvalidEdge(edges.universe()));
    }
    Ok(())
}

/// Every connected component of `(V, edges)` has at most as many edges as
/// vertices. A self-loop counts as the component's cycle.
pub fn is_pseudoforest(g: &MultiGraph, edges: &EdgeSet) -> Result<bool> {
    check_edges(g, edges)?;
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // A component may absorb exactly one edge that closes a cycle.
    let mut cyclic = vec![false; g.n()];
    for id in edges.iter() {
        let e = g.edges()[id];
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a == b {
            if cyclic[a] {
                return Ok(false);
            }
            cyclic[a] = true;
        } else {
            if cyclic[a] && cyclic[b] {
                return Ok(false);
            }
            parent[a] = b;
            cyclic[b] |= cyclic[a];
        }
    }
    Ok(true)
}

/// Independence in the `rho`-fold union of the pseudoforest matroid. When
/// independent, returns a partition of `edges` into `rho` pseudoforests.
pub fn pf_union_independent(g: &MultiGraph, rho: u64, edges: &EdgeSet) -> Result<Option<Vec<EdgeSet>>> {
    if rho == 0 {
        return Err(Error::InvalidParameter("fold count must be at least 1".into()));
    }
    check_edges(g, edges)?;
    let sub = g.edge_subgraph(edges)?;
    let Some(orient) = check_density_integral(&sub, rho)? else {
        return Ok(None);
    };
    let ids: Vec<usize> = edges.iter().collect();
    let mut inbound: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (j, &head) in orient.heads.iter().enumerate() {
        inbound[head].push(ids[j]);
    }
    let mut parts = Vec::with_capacity(rho as usize);
    for round in 0..rho as usize {
        let mut part = EdgeSet::empty(g.m());
        for list in &inbound {
            if let Some(&id) = list.get(round) {
                part.insert(id);
            }
        }
        parts.push(part);
    }
    Ok(Some(parts))
}

/// Greedy rank in edge-id order.
pub fn pf_union_rank(g: &MultiGraph, rho: u64, edges: &EdgeSet) -> Result<usize> {
    check_edges(g, edges)?;
    let mut basis = EdgeSet::empty(g.m());
    for id in edges.iter() {
        let trial = basis.with(id);
        if pf_union_independent(g, rho, &trial)?.is_some() {
            basis = trial;
        }
    }
    Ok(basis.len())
}

#[derive(Clone, Debug)]
pub struct PseudoforestUnion {
    graph: MultiGraph,
    rho: u64,
}

impl PseudoforestUnion {
    pub fn new(graph: MultiGraph, rho: u64) -> Result<Self> {
        if rho == 0 {
            return Err(Error::InvalidParameter("fold count must be at least 1".into()));
        }
        Ok(PseudoforestUnion { graph, rho })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn is_independent(&self, edges: &EdgeSet) -> bool {
        pf_union_independent(&self.graph, self.rho, edges)
            .expect("edge set over the host graph")
            .is_some()
    }
}

impl RankOracle for PseudoforestUnion {
    fn ground_size(&self) -> usize {
        self.graph.m()
    }
    fn rank(&self, edges: &EdgeSet) -> usize {
        pf_union_rank(&self.graph, self.rho, edges).expect("edge set over the host graph")
    }
}

/// `h(S) = |b(S)| - r(E) + r(E - b(S))`, the dual rank of the edges
/// touching `S`.
#[derive(Debug)]
pub struct DualRankH {
    graph: MultiGraph,
    matroid: Arc<dyn RankOracle>,
    ground: VertexSet,
    full_rank: usize,
}

impl DualRankH {
    pub fn new(graph: MultiGraph, matroid: Arc<dyn RankOracle>) -> Result<Self> {
        if matroid.ground_size() != graph.m() {
            return Err(Error::InvalidParameter(
                "matroid ground set must be the edge set of the graph".into(),
            ));
        }
        let full_rank = matroid.rank(&EdgeSet::full(graph.m()));
        Ok(DualRankH {
            ground: graph.vertices(),
            graph,
            matroid,
            full_rank,
        })
    }

    /// `b(S)`: edges with at least one endpoint in `s`.
    pub fn boundary(&self, s: &VertexSet) -> EdgeSet {
        EdgeSet::from_ids(
            self.graph.m(),
            self.graph
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| s.contains(e.u) || s.contains(e.v))
                .map(|(id, _)| id),
        )
    }
}

impl SubmodFn for DualRankH {
    fn universe(&self) -> usize {
        self.graph.n()
    }
    fn ground(&self) -> &VertexSet {
        &self.ground
    }
    fn eval(&self, s: &VertexSet) -> Rational {
        let b = self.boundary(s);
        let rest = EdgeSet::full(self.graph.m()).difference(&b);
        let value = b.len() + self.matroid.rank(&rest) - self.full_rank;
        Rational::from_integer(BigInt::from(value))
    }
}

pub fn dual_rank_h(g: &MultiGraph, m: Arc<dyn RankOracle>) -> Result<DualRankH> {
    DualRankH::new(g.clone(), m)
}
