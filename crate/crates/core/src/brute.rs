//! Exhaustive reference implementations. Every set is enumerated as a
//! bitmask in increasing order; witness lists come out in that order.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gadgets::SetCoverInstance;
use crate::graph::MultiGraph;
use crate::oracle::SupermodOracle;
use crate::rational::{Cost, Rational};
use crate::set::{IdSet, VertexSet};
use crate::size_cap;

pub const DENSEST_CAP: usize = 16;
pub const GRAPH_DELETION_CAP: usize = 20;
pub const ORACLE_DELETION_CAP: usize = 12;
pub const SET_COVER_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteResult<V> {
    pub value: V,
    pub witnesses: Vec<IdSet>,
}

impl<V> BruteResult<V> {
    /// Union of all witnesses.
    pub fn union(&self) -> Option<IdSet> {
        let mut it = self.witnesses.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, w| acc.union(w)))
    }
}

/// Optimal deletion cost, `None` when every feasible deletion set contains
/// an infinite-cost element.
pub type DeletionOpt = BruteResult<Option<Rational>>;

fn guard(size: usize, default: usize) -> Result<()> {
    let cap = size_cap(default);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    Ok(())
}

fn mask_set(universe: usize, members: &[usize], mask: u64) -> IdSet {
    IdSet::from_mask(universe, members, mask)
}

fn edge_counts(g: &MultiGraph) -> Vec<u32> {
    let ends: Vec<u64> = g
        .edges()
        .iter()
        .map(|e| (1u64 << e.u) | (1u64 << e.v))
        .collect();
    (0..1u64 << g.n())
        .map(|t| ends.iter().filter(|&&b| b & t == b).count() as u32)
        .collect()
}

/// λ* of `g` and every densest vertex set.
pub fn brute_densest(g: &MultiGraph) -> Result<BruteResult<Rational>> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    guard(g.n(), DENSEST_CAP)?;
    let counts = edge_counts(g);
    let all: Vec<usize> = (0..g.n()).collect();
    let mut best = Rational::zero();
    let mut witnesses = Vec::new();
    for t in 1..1u64 << g.n() {
        let d = Rational::new(BigInt::from(counts[t as usize]), BigInt::from(t.count_ones()));
        if d > best || witnesses.is_empty() {
            best = d;
            witnesses.clear();
            witnesses.push(mask_set(g.n(), &all, t));
        } else if d == best {
            witnesses.push(mask_set(g.n(), &all, t));
        }
    }
    let result = BruteResult {
        value: best,
        witnesses,
    };
    let union = result.union().expect("a nonempty graph has a densest set");
    if !result.witnesses.contains(&union) {
        return Err(Error::InvariantViolation("union of densest sets is not densest".into()));
    }
    Ok(result)
}

/// `has[m]`: some nonempty subset of `m` is denser than allowed.
fn dense_closure(dense: Vec<bool>, bits: usize) -> Vec<bool> {
    let mut has = dense;
    for b in 0..bits {
        for m in 0..has.len() {
            if m >> b & 1 == 1 && has[m ^ (1 << b)] {
                has[m] = true;
            }
        }
    }
    has
}

fn rho_parts(rho: &Rational) -> Result<(i128, i128)> {
    match (rho.numer().to_i128(), rho.denom().to_i128()) {
        (Some(p), Some(q)) if p >= 0 => Ok((p, q)),
        _ => Err(Error::InvalidParameter(format!("unsupported rho {rho}"))),
    }
}

/// Minimum-cost deletion sets over subsets of the finite-cost vertices.
fn cheapest_feasible(
    universe: usize,
    members: &[usize],
    costs: &[Cost],
    violated: &[bool],
) -> DeletionOpt {
    let finite: u64 = members
        .iter()
        .enumerate()
        .filter(|(_, &v)| costs[v].is_finite())
        .fold(0, |acc, (i, _)| acc | 1 << i);
    let full = (1u64 << members.len()) - 1;
    let mut best: Option<Rational> = None;
    let mut witnesses = Vec::new();
    // Enumerate submasks of `finite` in increasing order.
    for s in 0..=full {
        if s & !finite != 0 || violated[(full & !s) as usize] {
            continue;
        }
        let cost: Rational = (0..members.len())
            .filter(|i| s >> i & 1 == 1)
            .map(|i| costs[members[i]].as_finite().cloned().unwrap_or_default())
            .sum();
        match &best {
            Some(b) if &cost > b => continue,
            Some(b) if &cost == b => {}
            _ => {
                best = Some(cost);
                witnesses.clear();
            }
        }
        witnesses.push(mask_set(universe, members, s));
    }
    BruteResult {
        value: best,
        witnesses,
    }
}

/// Exhaustive `min{c(S) : λ*(G - S) <= rho}`.
pub fn brute_opt_deletion(g: &MultiGraph, rho: &Rational) -> Result<DeletionOpt> {
    guard(g.n(), GRAPH_DELETION_CAP)?;
    let (p, q) = rho_parts(rho)?;
    let counts = edge_counts(g);
    let dense: Vec<bool> = counts
        .iter()
        .enumerate()
        .map(|(t, &c)| c as i128 * q > p * (t as u64).count_ones() as i128)
        .collect();
    let violated = dense_closure(dense, g.n());
    let members: Vec<usize> = (0..g.n()).collect();
    Ok(cheapest_feasible(g.n(), &members, g.costs(), &violated))
}

/// Exhaustive `min{c(S) : λ*(f|_{V - S}) <= rho}` over the ground set of `f`.
pub fn brute_opt_deletion_oracle(
    f: &dyn SupermodOracle,
    costs: &[Cost],
    rho: &Rational,
) -> Result<DeletionOpt> {
    let members: Vec<usize> = f.ground().iter().collect();
    guard(members.len(), ORACLE_DELETION_CAP)?;
    if costs.len() != f.universe() {
        return Err(Error::InvalidParameter("one cost per universe element required".into()));
    }
    let dense: Vec<bool> = (0..1u64 << members.len())
        .map(|t| {
            let s = mask_set(f.universe(), &members, t);
            f.eval(&s) > rho * BigInt::from(s.len())
        })
        .collect();
    let violated = dense_closure(dense, members.len());
    Ok(cheapest_feasible(f.universe(), &members, costs, &violated))
}

/// Maximum of `f(S)/|S|` over nonempty `S ⊆ ground` and all maximizers. An
/// empty ground set gives density zero and no witnesses.
pub fn brute_density(f: &dyn SupermodOracle) -> Result<BruteResult<Rational>> {
    let members: Vec<usize> = f.ground().iter().collect();
    guard(members.len(), DENSEST_CAP)?;
    let mut best = Rational::zero();
    let mut witnesses = Vec::new();
    for t in 1..1u64 << members.len() {
        let s = mask_set(f.universe(), &members, t);
        let d = f.eval(&s) / BigInt::from(s.len());
        if witnesses.is_empty() || d > best {
            best = d;
            witnesses.clear();
            witnesses.push(s);
        } else if d == best {
            witnesses.push(s);
        }
    }
    Ok(BruteResult {
        value: best,
        witnesses,
    })
}

/// Dense decomposition by direct recursion: each block is the union of all
/// maximizers of the marginal density over the remaining elements.
pub fn brute_decomposition(f: &dyn SupermodOracle) -> Result<Vec<(VertexSet, Rational)>> {
    guard(f.ground().len(), ORACLE_DELETION_CAP)?;
    let mut taken = VertexSet::empty(f.universe());
    let base_empty = f.eval(&taken);
    if !base_empty.is_zero() {
        return Err(Error::InvalidOracle("f(empty set) is not 0".into()));
    }
    let mut blocks = Vec::new();
    while taken.len() < f.ground().len() {
        let rest: Vec<usize> = f.ground().difference(&taken).iter().collect();
        let base = f.eval(&taken);
        let mut best: Option<Rational> = None;
        let mut union = VertexSet::empty(f.universe());
        let mut maximizers = Vec::new();
        for t in 1..1u64 << rest.len() {
            let x = mask_set(f.universe(), &rest, t);
            let d = (f.eval(&taken.union(&x)) - &base) / BigInt::from(x.len());
            match &best {
                Some(b) if &d < b => continue,
                Some(b) if &d == b => {}
                _ => {
                    best = Some(d);
                    union = VertexSet::empty(f.universe());
                    maximizers.clear();
                }
            }
            union = union.union(&x);
            maximizers.push(x);
        }
        let best = best.expect("nonempty remainder");
        if !maximizers.contains(&union) {
            return Err(Error::InvariantViolation("union of maximizers is not a maximizer".into()));
        }
        taken = taken.union(&union);
        blocks.push((union, best));
    }
    Ok(blocks)
}

/// Minimum-cost set cover; witnesses are sets of set ids.
pub fn brute_set_cover(sc: &SetCoverInstance) -> Result<BruteResult<Cost>> {
    let k = sc.sets().len();
    guard(k, SET_COVER_CAP)?;
    let all: Vec<usize> = (0..k).collect();
    let mut best: Option<Cost> = None;
    let mut witnesses = Vec::new();
    for t in 0..1u64 << k {
        let chosen: Vec<usize> = (0..k).filter(|i| t >> i & 1 == 1).collect();
        if !sc.is_cover(&chosen) {
            continue;
        }
        let cost = sc.cost_of(&chosen);
        match &best {
            Some(b) if &cost > b => continue,
            Some(b) if &cost == b => {}
            _ => {
                best = Some(cost);
                witnesses.clear();
            }
        }
        witnesses.push(mask_set(k, &all, t));
    }
    let value = best.ok_or_else(|| Error::InvalidParameter("instance has no cover".into()))?;
    Ok(BruteResult { value, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::graph_oracle;
    use crate::rational::{int, rat};

    fn k4() -> MultiGraph {
        MultiGraph::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn densest_examples() {
        let tri = MultiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = brute_densest(&tri).unwrap();
        assert_eq!(r.value, int(1));
        assert!(r.witnesses.contains(&VertexSet::full(3)));
        assert_eq!(brute_densest(&k4()).unwrap().value, rat(3, 2));
        let empty = MultiGraph::unit(3, &[]).unwrap();
        let r = brute_densest(&empty).unwrap();
        assert_eq!(r.value, int(0));
        assert_eq!(r.witnesses.len(), 7);
        assert_eq!(r.union().unwrap(), VertexSet::full(3));
    }

    #[test]
    fn deletion_examples() {
        let tri = MultiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = brute_opt_deletion(&tri, &int(1)).unwrap();
        assert_eq!(r.value, Some(int(0)));
        assert_eq!(r.witnesses, vec![VertexSet::empty(3)]);

        let r = brute_opt_deletion(&k4(), &int(1)).unwrap();
        assert_eq!(r.value, Some(int(1)));
        assert_eq!(r.witnesses.len(), 4);

        let loops = MultiGraph::unit(1, &[(0, 0), (0, 0), (0, 0)])
            .unwrap()
            .with_costs(vec![Cost::Infinite])
            .unwrap();
        let r = brute_opt_deletion(&loops, &int(2)).unwrap();
        assert_eq!(r.value, None);
        assert!(r.witnesses.is_empty());

        let via_oracle = brute_opt_deletion_oracle(graph_oracle(&k4()).as_ref(), k4().costs(), &int(1)).unwrap();
        assert_eq!(via_oracle, brute_opt_deletion(&k4(), &int(1)).unwrap());
    }

    #[test]
    fn set_cover_examples() {
        let two = SetCoverInstance::new(
            1,
            vec![vec![0], vec![0]],
            vec![Cost::one(), Cost::finite(int(2)).unwrap()],
        )
        .unwrap();
        let r = brute_set_cover(&two).unwrap();
        assert_eq!(r.value, Cost::one());
        assert_eq!(r.witnesses[0].to_vec(), vec![0]);

        let forced = SetCoverInstance::new(
            3,
            vec![vec![0], vec![1], vec![2]],
            vec![Cost::one(), Cost::finite(int(2)).unwrap(), Cost::finite(rat(1, 2)).unwrap()],
        )
        .unwrap();
        let r = brute_set_cover(&forced).unwrap();
        assert_eq!(r.value, Cost::finite(rat(7, 2)).unwrap());
        assert_eq!(r.witnesses.len(), 1);
    }

    #[test]
    fn decomposition_reference() {
        let g = MultiGraph::unit(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let blocks = brute_decomposition(graph_oracle(&g).as_ref()).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].1, rat(3, 2));
        assert_eq!(blocks[1], (VertexSet::from_ids(5, [4]), int(1)));
    }
}
