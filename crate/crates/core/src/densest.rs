//! Exact densest subgraph, excess maximization and the orientation tests.
//!
//! Everything runs on one flow gadget: the source feeds every (hyper)edge
//! node, each edge node has unbounded arcs to its endpoints, and every vertex
//! drains into the sink. With `rho = p/q`, source arcs carry `q` and sink arcs
//! carry `p`, so a minimum cut of value `C` certifies
//! `max_Z q·|E(Z)| - p·|Z| = q·|E| - C`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::maxflow::{max_flow, Capacity, FlowNetwork, MinCut};
use crate::rational::{floor, Rational};
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityCertificate {
    pub lambda_star: Rational,
    /// The inclusion-wise maximal densest set.
    pub witness: VertexSet,
}

/// Per-edge split of one unit of in-degree between its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeShare {
    pub toward_u: Rational,
    /// Always zero for a self-loop, whose whole unit goes to `u`.
    pub toward_v: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalOrientation {
    pub shares: Vec<EdgeShare>,
}

impl FractionalOrientation {
    /// Fractional in-degree of every vertex.
    pub fn loads(&self, g: &MultiGraph) -> Vec<Rational> {
        let mut load = vec![Rational::zero(); g.n()];
        for (e, s) in g.edges().iter().zip(&self.shares) {
            load[e.u] += &s.toward_u;
            if !e.is_loop() {
                load[e.v] += &s.toward_v;
            }
        }
        load
    }

    /// Shares are non-negative and sum to one on every edge.
    pub fn is_valid(&self, g: &MultiGraph) -> bool {
        self.shares.len() == g.m()
            && g.edges().iter().zip(&self.shares).all(|(e, s)| {
                !s.toward_u.is_negative()
                    && !s.toward_v.is_negative()
                    && if e.is_loop() {
                        s.toward_u.is_one() && s.toward_v.is_zero()
                    } else {
                        (&s.toward_u + &s.toward_v).is_one()
                    }
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralOrientation {
    /// Head (the endpoint receiving the edge) of every edge.
    pub heads: Vec<VertexId>,
}

impl IntegralOrientation {
    pub fn in_degrees(&self, g: &MultiGraph) -> Vec<usize> {
        let mut deg = vec![0; g.n()];
        for &h in &self.heads {
            deg[h] += 1;
        }
        deg
    }

    pub fn is_valid(&self, g: &MultiGraph) -> bool {
        self.heads.len() == g.m()
            && g.edges().iter().zip(&self.heads).all(|(e, &h)| e.touches(h))
    }
}

fn to_capacity(x: &BigInt) -> Result<Capacity> {
    x.to_i128()
        .ok_or_else(|| Error::InvalidParameter(format!("value {x} too large for flow capacities")))
}

/// The density gadget over the hyperedges contained in `within`.
pub(crate) struct DensityNetwork {
    pub net: FlowNetwork,
    /// Local vertex order: `vertices[i]` is node `2 + i`.
    pub vertices: Vec<VertexId>,
    /// Index (into the caller's edge list) of every edge node.
    pub edge_ids: Vec<usize>,
    /// Arc ids from each edge node to its endpoints, parallel to the edge's vertex list.
    pub endpoint_arcs: Vec<Vec<usize>>,
    pub edge_weight: Capacity,
}

impl DensityNetwork {
    pub fn build<'a, I>(universe: usize, edges: I, rho: &Rational, within: &VertexSet) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [VertexId]>,
    {
        if rho.is_negative() {
            return Err(Error::InvalidParameter("rho must be non-negative".into()));
        }
        if within.universe() != universe {
            return Err(Error::InvalidVertex(within.universe().max(universe)));
        }
        let p = to_capacity(rho.numer())?;
        let q = to_capacity(rho.denom())?;
        let vertices: Vec<VertexId> = within.iter().collect();
        let mut local = vec![usize::MAX; universe];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let inside: Vec<(usize, &[VertexId])> = edges
            .into_iter()
            .enumerate()
            .filter(|(_, e)| e.iter().all(|&v| within.contains(v)))
            .collect();
        let k = vertices.len();
        let mut net = FlowNetwork::new(2 + k + inside.len(), 0, 1);
        for i in 0..k {
            net.add_arc(2 + i, 1, p);
        }
        let mut edge_ids = Vec::with_capacity(inside.len());
        let mut endpoint_arcs = Vec::with_capacity(inside.len());
        for (j, (id, e)) in inside.into_iter().enumerate() {
            let node = 2 + k + j;
            net.add_arc(0, node, q);
            endpoint_arcs.push(
                e.iter()
                    .map(|&v| net.add_unbounded_arc(node, 2 + local[v]))
                    .collect(),
            );
            edge_ids.push(id);
        }
        Ok(DensityNetwork {
            net,
            vertices,
            edge_ids,
            endpoint_arcs,
            edge_weight: q,
        })
    }

    pub fn solve(&self) -> Result<MinCut> {
        max_flow(&self.net)
    }

    /// Excess value and maximal maximizer from a solved cut.
    pub fn excess(&self, cut: &MinCut, universe: usize) -> (Rational, VertexSet) {
        let total = self.edge_weight * self.edge_ids.len() as Capacity;
        let value = Rational::new(
            BigInt::from(total - cut.value),
            BigInt::from(self.edge_weight),
        );
        let witness = VertexSet::from_ids(
            universe,
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| cut.source_side[2 + i])
                .map(|(_, &v)| v),
        );
        (value, witness)
    }
}

/// `max_{Z ⊆ within} |E_H(Z)| - rho·|Z|` over hyperedges, with the maximal maximizer.
pub(crate) fn hyper_excess<'a, I>(
    universe: usize,
    edges: I,
    rho: &Rational,
    within: &VertexSet,
) -> Result<(Rational, VertexSet)>
where
    I: IntoIterator<Item = &'a [VertexId]>,
{
    let dn = DensityNetwork::build(universe, edges, rho, within)?;
    let cut = dn.solve()?;
    Ok(dn.excess(&cut, universe))
}

fn edge_lists(g: &MultiGraph) -> Vec<Vec<VertexId>> {
    g.edges()
        .iter()
        .map(|e| if e.is_loop() { vec![e.u] } else { vec![e.u, e.v] })
        .collect()
}

/// `max_{Z ⊆ within} |E(Z)| - rho·|Z|` and its maximal maximizer.
pub fn excess_max(
    g: &MultiGraph,
    rho: &Rational,
    within: &VertexSet,
) -> Result<(Rational, VertexSet)> {
    if let Some(bad) = within.iter().find(|&v| v >= g.n()) {
        return Err(Error::InvalidVertex(bad));
    }
    let lists = edge_lists(g);
    hyper_excess(g.n(), lists.iter().map(Vec::as_slice), rho, within)
}

/// Binary search for the maximum density `λ*` of a set function whose
/// densities are fractions with denominator at most `denom_bound`.
///
/// `probe(rho)` must return the maximum excess at `rho` with the maximal
/// maximizer; `upper` must be at least `λ*`.
pub(crate) fn search_density<F>(
    denom_bound: &BigInt,
    upper: Rational,
    mut probe: F,
) -> Result<(Rational, VertexSet)>
where
    F: FnMut(&Rational) -> Result<(Rational, VertexSet)>,
{
    let zero = Rational::zero();
    let (excess0, witness0) = probe(&zero)?;
    if excess0.is_zero() {
        return Ok((zero, witness0));
    }
    let mut lo = zero;
    let mut hi = upper;
    if probe(&hi)?.0.is_positive() {
        return Err(Error::InvariantViolation(
            "density upper bound is below the maximum density".into(),
        ));
    }
    // Two distinct fractions with denominators <= N differ by at least 1/N^2.
    let n = denom_bound.clone().max(BigInt::one());
    let width = Rational::new(BigInt::one(), &n * &n);
    // Invariant: lo < λ* <= hi.
    while &hi - &lo >= width {
        let mid = (&lo + &hi) / BigInt::from(2);
        if probe(&mid)?.0.is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut lambda = None;
    let mut d = BigInt::one();
    while d <= n {
        let cand = Rational::new(floor(&(&hi * &d)), d.clone());
        if cand > lo {
            lambda = Some(cand);
            break;
        }
        d += 1;
    }
    let lambda = lambda.ok_or_else(|| {
        Error::InvariantViolation("no candidate density in the final search interval".into())
    })?;
    let (excess, witness) = probe(&lambda)?;
    if !excess.is_zero() || witness.is_empty() {
        return Err(Error::InvariantViolation(
            "snapped density does not certify a densest set".into(),
        ));
    }
    Ok((lambda, witness))
}

pub fn densest_subgraph(g: &MultiGraph) -> Result<DensityCertificate> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let all = g.vertices();
    let lists = edge_lists(g);
    // Loops make densities up to m possible; max(m, 1) bounds λ*.
    let upper = Rational::from_integer(BigInt::from(g.m().max(1)));
    let (lambda_star, witness) = search_density(&BigInt::from(g.n()), upper, |rho| {
        hyper_excess(g.n(), lists.iter().map(Vec::as_slice), rho, &all)
    })?;
    Ok(DensityCertificate {
        lambda_star,
        witness,
    })
}

/// `λ*` of `g`, with the convention that the empty graph has density zero.
pub fn density_or_zero(g: &MultiGraph) -> Result<Rational> {
    if g.n() == 0 {
        return Ok(Rational::zero());
    }
    Ok(densest_subgraph(g)?.lambda_star)
}

/// A fractional orientation with every fractional in-degree at most `rho`,
/// which exists exactly when `λ*(g) <= rho`.
pub fn check_density_fractional(
    g: &MultiGraph,
    rho: &Rational,
) -> Result<Option<FractionalOrientation>> {
    let lists = edge_lists(g);
    let dn = DensityNetwork::build(g.n(), lists.iter().map(Vec::as_slice), rho, &g.vertices())?;
    let cut = dn.solve()?;
    if cut.value != dn.edge_weight * g.m() as Capacity {
        return Ok(None);
    }
    let q = BigInt::from(dn.edge_weight);
    let mut shares = Vec::with_capacity(g.m());
    for (j, arcs) in dn.endpoint_arcs.iter().enumerate() {
        debug_assert_eq!(dn.edge_ids[j], j);
        let share = |a: usize| Rational::new(BigInt::from(cut.arc_flow[a]), q.clone());
        shares.push(EdgeShare {
            toward_u: share(arcs[0]),
            toward_v: arcs.get(1).map_or_else(Rational::zero, |&a| share(a)),
        });
    }
    Ok(Some(FractionalOrientation { shares }))
}

/// An orientation with every in-degree at most `rho`, which exists exactly
/// when `λ*(g) <= rho`.
pub fn check_density_integral(g: &MultiGraph, rho: u64) -> Result<Option<IntegralOrientation>> {
    let lists = edge_lists(g);
    let rho = Rational::from_integer(BigInt::from(rho));
    let dn = DensityNetwork::build(g.n(), lists.iter().map(Vec::as_slice), &rho, &g.vertices())?;
    let cut = dn.solve()?;
    if cut.value != g.m() as Capacity {
        return Ok(None);
    }
    let heads = dn
        .endpoint_arcs
        .iter()
        .zip(&lists)
        .map(|(arcs, ends)| {
            let k = arcs
                .iter()
                .position(|&a| cut.arc_flow[a] == 1)
                .expect("saturated edge node routes its unit somewhere");
            ends[k]
        })
        .collect();
    Ok(Some(IntegralOrientation { heads }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn triangle() -> MultiGraph {
        MultiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn k4() -> MultiGraph {
        MultiGraph::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn densest_examples() {
        let c = densest_subgraph(&triangle()).unwrap();
        assert_eq!(c.lambda_star, int(1));
        assert_eq!(c.witness.to_vec(), vec![0, 1, 2]);

        let c = densest_subgraph(&k4()).unwrap();
        assert_eq!(c.lambda_star, rat(3, 2));
        assert_eq!(c.witness.len(), 4);

        let loops = MultiGraph::unit(1, &[(0, 0), (0, 0), (0, 0), (0, 0), (0, 0)]).unwrap();
        assert_eq!(densest_subgraph(&loops).unwrap().lambda_star, int(5));

        let empty = MultiGraph::unit(3, &[]).unwrap();
        let c = densest_subgraph(&empty).unwrap();
        assert_eq!(c.lambda_star, int(0));
        assert_eq!(c.witness.len(), 3);

        assert_eq!(densest_subgraph(&MultiGraph::unit(0, &[]).unwrap()), Err(Error::EmptyGraph));
    }

    #[test]
    fn witness_excludes_sparse_tail() {
        // K4 plus a pendant vertex.
        let g = MultiGraph::unit(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)],
        )
        .unwrap();
        let c = densest_subgraph(&g).unwrap();
        assert_eq!(c.lambda_star, rat(3, 2));
        assert_eq!(c.witness.to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn excess_examples() {
        let g = k4();
        let (v, w) = excess_max(&g, &int(1), &g.vertices()).unwrap();
        assert_eq!(v, int(2));
        assert_eq!(w.len(), 4);

        let t = triangle();
        assert_eq!(excess_max(&t, &int(1), &t.vertices()).unwrap().0, int(0));

        let (v, w) = excess_max(&g, &int(1), &VertexSet::empty(4)).unwrap();
        assert_eq!(v, int(0));
        assert!(w.is_empty());

        let (v, _) = excess_max(&g, &int(1), &VertexSet::from_ids(4, [0, 1, 2])).unwrap();
        assert_eq!(v, int(0));
        assert!(excess_max(&g, &int(-1), &g.vertices()).is_err());
    }

    #[test]
    fn fractional_examples() {
        let t = triangle();
        let o = check_density_fractional(&t, &int(1)).unwrap().unwrap();
        assert!(o.is_valid(&t));
        assert!(o.loads(&t).iter().all(|l| *l <= int(1)));

        let star = MultiGraph::unit(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let o = check_density_fractional(&star, &int(1)).unwrap().unwrap();
        assert!(o.loads(&star).iter().all(|l| *l <= int(1)));

        assert!(check_density_fractional(&k4(), &int(1)).unwrap().is_none());
        let o = check_density_fractional(&k4(), &rat(3, 2)).unwrap().unwrap();
        assert!(o.is_valid(&k4()));
        assert!(o.loads(&k4()).iter().all(|l| *l <= rat(3, 2)));
    }

    #[test]
    fn integral_examples() {
        let t = triangle();
        let o = check_density_integral(&t, 1).unwrap().unwrap();
        assert!(o.is_valid(&t));
        assert!(o.in_degrees(&t).iter().all(|&d| d <= 1));

        let loops = MultiGraph::unit(1, &[(0, 0), (0, 0), (0, 0)]).unwrap();
        assert!(check_density_integral(&loops, 2).unwrap().is_none());
        assert!(check_density_integral(&loops, 3).unwrap().is_some());
    }
}
