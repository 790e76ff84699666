//! Undirected multigraphs with self-loops and vertex costs, plus hypergraphs.
//!
//! Counting conventions: a self-loop at `v` contributes one edge to `|E(S)|`
//! whenever `v ∈ S`, and one to the degree of `v`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rational::Cost;
use crate::set::VertexSet;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        Edge { u, v }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn inside(&self, s: &VertexSet) -> bool {
        s.contains(self.u) && s.contains(self.v)
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

/// Immutable multigraph. Deletion and restriction build new graphs whose
/// `origin` entries point back at the vertex ids of the root graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    costs: Vec<Cost>,
    origin: Vec<VertexId>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<Edge>, costs: Vec<Cost>) -> Result<Self> {
        if costs.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} costs, got {}",
                costs.len()
            )));
        }
        if let Some(e) = edges.iter().find(|e| e.u >= n || e.v >= n) {
            return Err(Error::InvalidVertex(e.u.max(e.v)));
        }
        Ok(MultiGraph {
            n,
            edges,
            costs,
            origin: (0..n).collect(),
        })
    }

    /// Unit costs everywhere.
    pub fn unit(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let edges = edges.iter().map(|&(u, v)| Edge::new(u, v)).collect();
        MultiGraph::new(n, edges, vec![Cost::one(); n])
    }

    pub fn with_costs(&self, costs: Vec<Cost>) -> Result<Self> {
        let mut g = MultiGraph::new(self.n, self.edges.clone(), costs)?;
        g.origin = self.origin.clone();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<Edge> {
        self.edges.get(id).copied().ok_or(Error::InvalidEdge(id))
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }

    pub fn cost(&self, v: VertexId) -> Result<&Cost> {
        self.costs.get(v).ok_or(Error::InvalidVertex(v))
    }

    pub fn origin(&self, v: VertexId) -> Result<VertexId> {
        self.origin.get(v).copied().ok_or(Error::InvalidVertex(v))
    }

    pub fn origins(&self) -> &[VertexId] {
        &self.origin
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        if v >= self.n {
            return Err(Error::InvalidVertex(v));
        }
        Ok(self.edges.iter().filter(|e| e.touches(v)).count())
    }

    /// Edge ids incident to each vertex; a self-loop is listed once.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            inc[e.u].push(id);
            if !e.is_loop() {
                inc[e.v].push(id);
            }
        }
        inc
    }

    /// `|E(S)|`: edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        self.edges.iter().filter(|e| e.inside(s)).count()
    }

    pub fn cost_of(&self, s: &VertexSet) -> Cost {
        s.iter().map(|v| &self.costs[v]).sum()
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::InvalidVertex(s.universe().max(self.n)));
        }
        Ok(())
    }

    /// The subgraph induced by `keep`, renumbered in ascending id order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<MultiGraph> {
        if let Some(bad) = keep.iter().find(|&v| v >= self.n) {
            return Err(Error::InvalidVertex(bad));
        }
        self.check_set(keep)?;
        let mut new_id = vec![usize::MAX; self.n];
        let kept: Vec<VertexId> = keep.iter().collect();
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.inside(keep))
            .map(|e| Edge::new(new_id[e.u], new_id[e.v]))
            .collect();
        Ok(MultiGraph {
            n: kept.len(),
            edges,
            costs: kept.iter().map(|&v| self.costs[v].clone()).collect(),
            origin: kept.iter().map(|&v| self.origin[v]).collect(),
        })
    }

    /// `G - S`.
    pub fn delete(&self, s: &VertexSet) -> Result<MultiGraph> {
        self.check_set(s)?;
        self.induced_subgraph(&self.vertices().difference(s))
    }

    /// Same vertex set, only the edges listed in `keep`.
    pub fn edge_subgraph(&self, keep: &crate::set::EdgeSet) -> Result<MultiGraph> {
        if keep.universe() != self.m() {
            return Err(Error::InvalidEdge(keep.universe()));
        }
        Ok(MultiGraph {
            n: self.n,
            edges: keep.iter().map(|id| self.edges[id]).collect(),
            costs: self.costs.clone(),
            origin: self.origin.clone(),
        })
    }

    /// Text form: `n m`, one `u v` line per edge, then `c u cost` for every
    /// vertex whose cost is not 1.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.m()).unwrap();
        for e in &self.edges {
            writeln!(out, "{} {}", e.u, e.v).unwrap();
        }
        for (v, c) in self.costs.iter().enumerate() {
            if *c != Cost::one() {
                writeln!(out, "c {v} {c}").unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let (n, m) = parse_pair(ln, header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, format!("expected {m} edge lines")))?;
            let (u, v) = parse_pair(ln, line)?;
            if u >= n || v >= n {
                return Err(Error::parse(ln, format!("vertex out of range in {line:?}")));
            }
            edges.push(Edge::new(u, v));
        }
        let costs = parse_cost_lines(n, lines)?;
        MultiGraph::new(n, edges, costs)
    }
}

/// Hypergraph with vertex costs. Hyperedges are stored as sorted,
/// duplicate-free vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<VertexId>>,
    costs: Vec<Cost>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<VertexId>>, costs: Vec<Cost>) -> Result<Self> {
        if costs.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} costs, got {}",
                costs.len()
            )));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (id, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidHyperedge(id));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidVertex(v));
            }
            e.sort_unstable();
            e.dedup();
            normalized.push(e);
        }
        Ok(Hypergraph {
            n,
            edges: normalized,
            costs,
        })
    }

    pub fn unit(n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        Hypergraph::new(n, edges, vec![Cost::one(); n])
    }

    pub fn from_graph(g: &MultiGraph) -> Self {
        Hypergraph {
            n: g.n(),
            edges: g
                .edges()
                .iter()
                .map(|e| if e.is_loop() { vec![e.u] } else { vec![e.u.min(e.v), e.u.max(e.v)] })
                .collect(),
            costs: g.costs().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }

    /// Largest hyperedge size.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.edges.len()).unwrap();
        for e in &self.edges {
            write!(out, "{}", e.len()).unwrap();
            for v in e {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        for (v, c) in self.costs.iter().enumerate() {
            if *c != Cost::one() {
                writeln!(out, "c {v} {c}").unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let (n, m) = parse_pair(ln, header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, format!("expected {m} hyperedge lines")))?;
            let nums = parse_usizes(ln, line)?;
            let (&k, rest) = nums
                .split_first()
                .ok_or_else(|| Error::parse(ln, "empty hyperedge line"))?;
            if rest.len() != k {
                return Err(Error::parse(ln, format!("expected {k} vertices")));
            }
            if rest.iter().any(|&v| v >= n) {
                return Err(Error::parse(ln, "vertex out of range"));
            }
            edges.push(rest.to_vec());
        }
        let costs = parse_cost_lines(n, lines)?;
        Hypergraph::new(n, edges, costs)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usizes(ln: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad integer {t:?}"))))
        .collect()
}

fn parse_pair(ln: usize, line: &str) -> Result<(usize, usize)> {
    match parse_usizes(ln, line)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::parse(ln, format!("expected two integers, got {line:?}"))),
    }
}

fn parse_cost_lines<'a>(
    n: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<Cost>> {
    let mut costs = vec![Cost::one(); n];
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["c", v, c] => {
                let v: usize = v
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad vertex {v:?}")))?;
                if v >= n {
                    return Err(Error::parse(ln, "vertex out of range"));
                }
                costs[v] = Cost::parse(c).map_err(|e| Error::parse(ln, e.to_string()))?;
            }
            _ => return Err(Error::parse(ln, format!("unexpected line {line:?}"))),
        }
    }
    Ok(costs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn triangle() -> MultiGraph {
        MultiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn k4() -> MultiGraph {
        MultiGraph::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn induced_subgraph_examples() {
        let t = triangle();
        let sub = t.induced_subgraph(&VertexSet::from_ids(3, [0, 2])).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.m(), 1);
        assert_eq!(sub.origins(), &[0, 2]);

        let g = k4();
        assert_eq!(g.induced_subgraph(&g.vertices()).unwrap(), g);

        let loops = MultiGraph::unit(2, &[(1, 1), (1, 1), (1, 1), (0, 1)]).unwrap();
        let sub = loops.induced_subgraph(&VertexSet::from_ids(2, [1])).unwrap();
        assert_eq!(sub.m(), 3);
        assert_eq!(sub.origin(0).unwrap(), 1);

        let bad = VertexSet::from_ids(5, [4]);
        assert!(matches!(t.induced_subgraph(&bad), Err(Error::InvalidVertex(_))));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(triangle().degree(0).unwrap(), 2);
        let g = MultiGraph::unit(3, &[(0, 0), (0, 0), (0, 1)]).unwrap();
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.degree(2).unwrap(), 0);
        assert_eq!(g.degree(3), Err(Error::InvalidVertex(3)));
    }

    #[test]
    fn nested_restriction_tracks_root_ids() {
        let g = k4();
        let a = g.delete(&VertexSet::from_ids(4, [0])).unwrap();
        let b = a.delete(&VertexSet::from_ids(3, [0])).unwrap();
        assert_eq!(b.origins(), &[2, 3]);
        assert_eq!(b.m(), 1);
    }

    #[test]
    fn text_round_trip() {
        let text = "3 4\n0 1\n1 2\n2 2\n0 2\nc 0 3/2\nc 2 inf\n";
        let g = MultiGraph::parse(text).unwrap();
        assert_eq!(g.cost(0).unwrap(), &Cost::Finite(rat(3, 2)));
        assert_eq!(g.cost(1).unwrap(), &Cost::one());
        assert_eq!(g.cost(2).unwrap(), &Cost::Infinite);
        assert_eq!(g.to_text(), text);
        assert!(MultiGraph::parse("2 1\n0 5\n").is_err());
        assert!(MultiGraph::parse("2 2\n0 1\n").is_err());
        assert!(MultiGraph::parse("2 0\nx 1 2\n").is_err());
    }

    #[test]
    fn hypergraph_parse() {
        let h = Hypergraph::parse("4 2\n3 0 1 2\n1 3\nc 3 2/1\n").unwrap();
        assert_eq!(h.rank(), 3);
        assert_eq!(h.to_text(), "4 2\n3 0 1 2\n1 3\nc 3 2/1\n");
        assert_eq!(
            Hypergraph::unit(2, vec![vec![]]),
            Err(Error::InvalidHyperedge(0))
        );
        assert!(Hypergraph::parse("3 1\n2 0\n").is_err());
    }
}
