//! Set Cover instances and their density-deletion gadgets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::densest::{check_density_integral, density_or_zero};
use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph};
use crate::rational::Cost;
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe: usize,
    sets: Vec<Vec<usize>>,
    costs: Vec<Cost>,
}

impl SetCoverInstance {
    /// Sets are sorted and deduplicated; every element must be covered.
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, costs: Vec<Cost>) -> Result<Self> {
        if sets.len() != costs.len() {
            return Err(Error::InvalidParameter("one cost per set required".into()));
        }
        let mut covered = vec![false; universe];
        let mut clean = Vec::with_capacity(sets.len());
        for set in sets {
            let set: Vec<usize> = set.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            for &e in &set {
                if e >= universe {
                    return Err(Error::InvalidParameter(format!("element {e} outside the universe")));
                }
                covered[e] = true;
            }
            clean.push(set);
        }
        if let Some(e) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidParameter(format!("element {e} belongs to no set")));
        }
        Ok(SetCoverInstance {
            universe,
            sets: clean,
            costs,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }

    /// Ids of the sets containing `e`, ascending.
    pub fn containing(&self, e: usize) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&s| self.sets[s].binary_search(&e).is_ok())
            .collect()
    }

    pub fn frequency(&self, e: usize) -> usize {
        self.containing(e).len()
    }

    pub fn max_frequency(&self) -> usize {
        (0..self.universe).map(|e| self.frequency(e)).max().unwrap_or(0)
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut covered = vec![false; self.universe];
        for &s in chosen {
            for &e in &self.sets[s] {
                covered[e] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    pub fn cost_of(&self, chosen: &[usize]) -> Cost {
        chosen.iter().map(|&s| self.costs[s].clone()).sum()
    }

    /// `nU nS`, then one `cost k e1 .. ek` line per set.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.universe, self.sets.len());
        for (set, cost) in self.sets.iter().zip(&self.costs) {
            out.push_str(&format!("{} {}", cost, set.len()));
            for e in set {
                out.push_str(&format!(" {e}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(ln, "bad header")))
            .collect::<Result<_>>()?;
        let [universe, count] = nums[..] else {
            return Err(Error::parse(ln, "header must be `nU nS`"));
        };
        let mut sets = Vec::with_capacity(count);
        let mut costs = Vec::with_capacity(count);
        for _ in 0..count {
            let (ln, line) = lines.next().ok_or_else(|| Error::parse(ln, "missing set line"))?;
            let mut tokens = line.split_whitespace();
            let cost = Cost::parse(tokens.next().unwrap_or(""))
                .map_err(|e| Error::parse(ln, e.to_string()))?;
            let k: usize = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::parse(ln, "missing set size"))?;
            let members: Vec<usize> = tokens
                .map(|t| t.parse().map_err(|_| Error::parse(ln, "bad element")))
                .collect::<Result<_>>()?;
            if members.len() != k {
                return Err(Error::parse(ln, format!("expected {k} elements")));
            }
            sets.push(members);
            costs.push(cost);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content"));
        }
        SetCoverInstance::new(universe, sets, costs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    Tree,
    Warmup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexRole {
    Set { set: usize },
    Root { element: usize },
    Internal { element: usize },
    Element { element: usize },
}

/// What every gadget vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: GadgetKind,
    pub rho: u64,
    pub roles: Vec<VertexRole>,
    /// `set_vertices[s]` is the vertex of set `s`.
    pub set_vertices: Vec<usize>,
    /// The source instance in its text format.
    pub set_cover: String,
}

#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub graph: MultiGraph,
    pub rho: u64,
    pub provenance: Provenance,
    pub set_cover: SetCoverInstance,
}

impl GadgetInstance {
    pub fn from_parts(graph: MultiGraph, provenance: Provenance) -> Result<Self> {
        let set_cover = SetCoverInstance::parse(&provenance.set_cover)?;
        if provenance.roles.len() != graph.n() || provenance.set_vertices.len() != set_cover.sets().len() {
            return Err(Error::InvalidParameter("provenance does not match the graph".into()));
        }
        Ok(GadgetInstance {
            rho: provenance.rho,
            graph,
            provenance,
            set_cover,
        })
    }

    /// Deletion set `{v_S : S ∈ chosen}`.
    pub fn deletion_for(&self, chosen: &[usize]) -> VertexSet {
        VertexSet::from_ids(
            self.graph.n(),
            chosen.iter().map(|&s| self.provenance.set_vertices[s]),
        )
    }
}

fn tree_vertex(base: usize, leaves: &[usize], f: usize, heap: usize) -> usize {
    if heap >= f {
        leaves[heap - f]
    } else {
        base + heap - 1
    }
}

/// Gadget for uniform frequency `f >= 4`, a power of two: one complete
/// binary tree per element over the vertices of its sets.
pub fn build_gadget(sc: &SetCoverInstance, rho: u64) -> Result<GadgetInstance> {
    if rho < 2 {
        return Err(Error::InvalidParameter("gadget threshold must be at least 2".into()));
    }
    let f = sc.frequency(0);
    if let Some(e) = (0..sc.universe()).find(|&e| sc.frequency(e) != f) {
        return Err(Error::UnsupportedInstance(format!(
            "element {e} has frequency {}, expected uniform {f}",
            sc.frequency(e)
        )));
    }
    if f < 4 || !f.is_power_of_two() {
        return Err(Error::UnsupportedInstance(format!(
            "frequency {f} is not a power of two of at least 4"
        )));
    }
    let extra = (rho - 2) as usize;
    let sets = sc.sets().len();
    let n = sets + sc.universe() * (f - 1);
    let mut roles: Vec<VertexRole> = (0..sets).map(|set| VertexRole::Set { set }).collect();
    let mut edges = Vec::new();
    let mut costs: Vec<Cost> = sc.costs().to_vec();
    for element in 0..sc.universe() {
        let leaves = sc.containing(element);
        let base = roles.len();
        for heap in 1..f {
            roles.push(if heap == 1 {
                VertexRole::Root { element }
            } else {
                VertexRole::Internal { element }
            });
            costs.push(Cost::Infinite);
            let parent = tree_vertex(base, &leaves, f, heap);
            for child in [2 * heap, 2 * heap + 1] {
                edges.push(Edge::new(parent, tree_vertex(base, &leaves, f, child)));
            }
        }
        edges.push(Edge::new(base, base));
    }
    for v in 0..sets {
        edges.extend([Edge::new(v, v), Edge::new(v, v)]);
    }
    for v in 0..n {
        edges.extend(std::iter::repeat_n(Edge::new(v, v), extra));
    }
    let graph = MultiGraph::new(n, edges, costs)?;
    let gi = GadgetInstance {
        rho,
        provenance: Provenance {
            kind: GadgetKind::Tree,
            rho,
            roles,
            set_vertices: (0..sets).collect(),
            set_cover: sc.to_text(),
        },
        graph,
        set_cover: sc.clone(),
    };
    check_tree_blocks(&gi, f)?;
    Ok(gi)
}

/// Each element tree carries `(4f - 1) + extra·(2f - 1)` edges on its
/// `2f - 1` vertices, one more than `rho` times its size.
fn check_tree_blocks(gi: &GadgetInstance, f: usize) -> Result<()> {
    let extra = (gi.rho - 2) as usize;
    for element in 0..gi.set_cover.universe() {
        let mut tree = gi.deletion_for(&gi.set_cover.containing(element));
        for (v, role) in gi.provenance.roles.iter().enumerate() {
            if matches!(role, VertexRole::Root { element: e } | VertexRole::Internal { element: e } if *e == element) {
                tree.insert(v);
            }
        }
        let size = 2 * f - 1;
        let inside = gi.graph.edges_within(&tree);
        if tree.len() != size || inside != 4 * f - 1 + extra * size || inside <= gi.rho as usize * size {
            return Err(Error::InvariantViolation(format!(
                "tree of element {element} has {inside} edges on {} vertices",
                tree.len()
            )));
        }
    }
    Ok(())
}

/// Incidence-graph gadget: `f_max - 1` loops per set vertex, `f_max - f_e`
/// loops per element vertex, threshold `f_max - 1`.
pub fn build_warmup_gadget(sc: &SetCoverInstance) -> Result<GadgetInstance> {
    let fmax = sc.max_frequency();
    if fmax < 2 {
        return Err(Error::UnsupportedInstance(
            "warmup gadget needs an element in at least two sets".into(),
        ));
    }
    let sets = sc.sets().len();
    let n = sets + sc.universe();
    let mut roles: Vec<VertexRole> = (0..sets).map(|set| VertexRole::Set { set }).collect();
    roles.extend((0..sc.universe()).map(|element| VertexRole::Element { element }));
    let mut costs = sc.costs().to_vec();
    costs.extend(std::iter::repeat_n(Cost::Infinite, sc.universe()));
    let mut edges = Vec::new();
    for (s, members) in sc.sets().iter().enumerate() {
        for &e in members {
            edges.push(Edge::new(s, sets + e));
        }
        edges.extend(std::iter::repeat_n(Edge::new(s, s), fmax - 1));
    }
    for e in 0..sc.universe() {
        let u = sets + e;
        edges.extend(std::iter::repeat_n(Edge::new(u, u), fmax - sc.frequency(e)));
    }
    let graph = MultiGraph::new(n, edges, costs)?;
    for e in 0..sc.universe() {
        if graph.degree(sets + e)? != fmax {
            return Err(Error::InvariantViolation(format!("element vertex {e} has wrong degree")));
        }
    }
    let rho = (fmax - 1) as u64;
    Ok(GadgetInstance {
        rho,
        provenance: Provenance {
            kind: GadgetKind::Warmup,
            rho,
            roles,
            set_vertices: (0..sets).collect(),
            set_cover: sc.to_text(),
        },
        graph,
        set_cover: sc.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractedCover {
    pub sets: Vec<usize>,
    pub cost: Cost,
}

/// The sets whose vertices were deleted by a finite-cost feasible `deletion`.
pub fn extract_cover(gi: &GadgetInstance, deletion: &VertexSet) -> Result<ExtractedCover> {
    if deletion.universe() != gi.graph.n() {
        return Err(Error::InvalidVertex(deletion.universe()));
    }
    if let Some(v) = deletion.iter().find(|&v| !gi.graph.costs()[v].is_finite()) {
        return Err(Error::NotFiniteCost(v));
    }
    let residual = gi.graph.delete(deletion)?;
    let feasible = if residual.n() == 0 {
        true
    } else {
        check_density_integral(&residual, gi.rho)?.is_some()
    };
    if !feasible {
        let lambda = density_or_zero(&residual)?;
        return Err(Error::NotFeasible(format!(
            "residual density {lambda} exceeds {}",
            gi.rho
        )));
    }
    let sets: Vec<usize> = gi
        .provenance
        .set_vertices
        .iter()
        .enumerate()
        .filter(|(_, &v)| deletion.contains(v))
        .map(|(s, _)| s)
        .collect();
    if !gi.set_cover.is_cover(&sets) {
        return Err(Error::InvariantViolation(
            "feasible deletion did not map to a set cover".into(),
        ));
    }
    let cost = gi.set_cover.cost_of(&sets);
    Ok(ExtractedCover { sets, cost })
}
