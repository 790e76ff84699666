//! Submodular cover and its equivalence with supermodular density deletion,
//! plus the greedy cover algorithm.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::oracle::{excess_max, Oracle, SupermodOracle, EXCESS_CAP};
use crate::rational::{Cost, Rational};
use crate::set::VertexSet;
use crate::size_cap;

/// Normalized, non-decreasing submodular set function.
pub trait SubmodFn: Send + Sync + fmt::Debug {
    fn universe(&self) -> usize;
    fn ground(&self) -> &VertexSet;
    fn eval(&self, s: &VertexSet) -> Rational;
}

pub type Submod = Arc<dyn SubmodFn>;

/// Find a minimum-cost `F` with `h(F) >= h(V)`.
#[derive(Clone, Debug)]
pub struct SubmodCoverInstance {
    pub h: Submod,
    pub costs: Vec<Cost>,
}

impl SubmodCoverInstance {
    pub fn new(h: Submod, costs: Vec<Cost>) -> Result<Self> {
        if costs.len() != h.universe() {
            return Err(Error::InvalidParameter(format!(
                "{} costs for a universe of {}",
                costs.len(),
                h.universe()
            )));
        }
        Ok(SubmodCoverInstance { h, costs })
    }

    pub fn target(&self) -> Rational {
        self.h.eval(self.h.ground())
    }

    pub fn is_cover(&self, f: &VertexSet) -> bool {
        self.h.eval(f) >= self.target()
    }

    pub fn cost_of(&self, s: &VertexSet) -> Cost {
        s.iter().map(|v| self.costs[v].clone()).sum()
    }
}

/// `h(X) = scale·(g(V) - g(V - X))` with `g(X) = max_{Z ⊆ X} f(Z) - rho·|Z|`.
#[derive(Debug)]
pub struct ReducedH {
    f: Oracle,
    rho: Rational,
    scale: BigInt,
    g_ground: Rational,
}

impl ReducedH {
    pub fn new(f: Oracle, rho: Rational) -> Result<Self> {
        if rho.is_negative() {
            return Err(Error::InvalidParameter("rho must be non-negative".into()));
        }
        let cap = size_cap(EXCESS_CAP);
        if !f.fast_excess() && f.ground().len() > cap {
            return Err(Error::TooLarge {
                size: f.ground().len(),
                cap,
            });
        }
        let scale = rho.denom().lcm(&f.value_denominator());
        let g_ground = excess_max(f.as_ref(), &rho, f.ground())?.0;
        Ok(ReducedH {
            f,
            rho,
            scale,
            g_ground,
        })
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// `g(X)`, unscaled.
    pub fn g(&self, x: &VertexSet) -> Rational {
        excess_max(self.f.as_ref(), &self.rho, x)
            .expect("excess maximization on a validated ground subset")
            .0
    }
}

impl SubmodFn for ReducedH {
    fn universe(&self) -> usize {
        self.f.universe()
    }
    fn ground(&self) -> &VertexSet {
        self.f.ground()
    }
    fn eval(&self, x: &VertexSet) -> Rational {
        let rest = self.f.ground().difference(x);
        (&self.g_ground - self.g(&rest)) * &self.scale
    }
}

/// Cover instance whose covers are exactly the deletion sets `F` with
/// `λ*(f|_{V-F}) <= rho`.
pub fn reduce_dd_to_cover(f: Oracle, costs: Vec<Cost>, rho: Rational) -> Result<SubmodCoverInstance> {
    SubmodCoverInstance::new(Arc::new(ReducedH::new(f, rho)?), costs)
}

/// `f(X) = h(V) - h(V - X) + |X|`.
#[derive(Debug)]
pub struct ReducedF {
    h: Submod,
    h_ground: Rational,
}

impl SupermodOracle for ReducedF {
    fn universe(&self) -> usize {
        self.h.universe()
    }
    fn ground(&self) -> &VertexSet {
        self.h.ground()
    }
    fn eval(&self, x: &VertexSet) -> Rational {
        let rest = self.h.ground().difference(x);
        &self.h_ground - self.h.eval(&rest) + BigInt::from(x.len())
    }
}

/// Density-deletion instance at threshold 1 whose feasible deletion sets
/// are exactly the covers of `inst`.
pub fn reduce_cover_to_dd(inst: &SubmodCoverInstance) -> (Oracle, Rational) {
    let f = ReducedF {
        h: inst.h.clone(),
        h_ground: inst.target(),
    };
    (Arc::new(f), Rational::one())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyCover {
    /// Elements in the order they were picked.
    pub picks: Vec<usize>,
    pub set: VertexSet,
    pub cost: Cost,
    /// False when the cover needed an infinite-cost element.
    pub finite: bool,
}

enum Rank {
    Free,
    Ratio(Rational),
    Infinite(Rational),
}

impl Rank {
    fn beats(&self, other: &Rank) -> bool {
        match (self, other) {
            (Rank::Free, Rank::Free) => false,
            (Rank::Free, _) => true,
            (Rank::Ratio(a), Rank::Ratio(b)) => a > b,
            (Rank::Ratio(_), Rank::Infinite(_)) => true,
            (Rank::Infinite(a), Rank::Infinite(b)) => a > b,
            _ => false,
        }
    }
}

/// Wolsey's greedy: repeatedly add the element with the best gain per unit
/// cost, lowest id first among ties.
pub fn greedy_cover(inst: &SubmodCoverInstance) -> GreedyCover {
    let h = inst.h.as_ref();
    let target = inst.target();
    let mut set = VertexSet::empty(h.universe());
    let mut value = h.eval(&set);
    let mut picks = Vec::new();
    while value < target {
        let mut best: Option<(usize, Rank, Rational)> = None;
        for v in h.ground().difference(&set).iter() {
            let with = h.eval(&set.with(v));
            let gain = &with - &value;
            if !gain.is_positive() {
                continue;
            }
            let rank = match &inst.costs[v] {
                Cost::Finite(c) if c.is_zero() => Rank::Free,
                Cost::Finite(c) => Rank::Ratio(&gain / c),
                Cost::Infinite => Rank::Infinite(gain),
            };
            if best.as_ref().is_none_or(|(_, r, _)| rank.beats(r)) {
                best = Some((v, rank, with));
            }
        }
        let (v, _, with) = best.expect("a monotone h gains on V - F whenever h(F) < h(V)");
        set.insert(v);
        picks.push(v);
        value = with;
    }
    let cost = inst.cost_of(&set);
    GreedyCover {
        picks,
        finite: cost.is_finite(),
        set,
        cost,
    }
}

/// `1 + ln(max_v h(v))` for integer-valued `h` with `max_v h(v) >= 1`,
/// rounded upward.
pub fn wolsey_factor(inst: &SubmodCoverInstance) -> Option<f64> {
    let h = inst.h.as_ref();
    let empty = VertexSet::empty(h.universe());
    let mut max = Rational::zero();
    for v in h.ground().iter() {
        let s = h.eval(&empty.with(v));
        if !s.is_integer() {
            return None;
        }
        max = max.max(s);
    }
    if max < Rational::one() {
        return None;
    }
    let ln = crate::rational::to_f64(&max).ln();
    Some((1.0 + ln) * (1.0 + 4.0 * f64::EPSILON))
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

    /// `h(X) = min(|X|, cap)`.
    #[derive(Debug)]
    struct Capped {
        ground: VertexSet,
        cap: usize,
    }

    impl SubmodFn for Capped {
        fn universe(&self) -> usize {
            self.ground.universe()
        }
        fn ground(&self) -> &VertexSet {
            &self.ground
        }
        fn eval(&self, s: &VertexSet) -> Rational {
            int(s.len().min(self.cap) as i64)
        }
    }

    fn capped(n: usize, cap: usize) -> SubmodCoverInstance {
        SubmodCoverInstance::new(
            Arc::new(Capped {
                ground: VertexSet::full(n),
                cap,
            }),
            vec![Cost::one(); n],
        )
        .unwrap()
    }

    #[test]
    fn dd_to_cover_examples() {
        let inst = reduce_dd_to_cover(graph_oracle(&k4()), vec![Cost::one(); 4], int(1)).unwrap();
        assert_eq!(inst.target(), int(2));
        assert_eq!(inst.h.eval(&VertexSet::empty(4)), int(0));
        for v in 0..4 {
            assert_eq!(inst.h.eval(&VertexSet::from_ids(4, [v])), int(2));
        }

        let tri = MultiGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = reduce_dd_to_cover(graph_oracle(&tri), vec![Cost::one(); 3], int(1)).unwrap();
        for mask in 0..8u64 {
            assert_eq!(inst.h.eval(&VertexSet::from_mask(3, &[0, 1, 2], mask)), int(0));
        }
        assert!(greedy_cover(&inst).set.is_empty());
    }

    #[test]
    fn rational_rho_scales_to_integers() {
        let inst = reduce_dd_to_cover(graph_oracle(&k4()), vec![Cost::one(); 4], rat(5, 4)).unwrap();
        // g(V) = 6 - 5 = 1, scaled by 4.
        assert_eq!(inst.target(), int(4));
        for mask in 0..16u64 {
            assert!(inst.h.eval(&VertexSet::from_mask(4, &[0, 1, 2, 3], mask)).is_integer());
        }
    }

    #[test]
    fn cover_to_dd_examples() {
        let inst = capped(2, 1);
        let (f, rho) = reduce_cover_to_dd(&inst);
        assert_eq!(rho, int(1));
        assert_eq!(f.eval(&VertexSet::empty(2)), int(0));
        assert_eq!(f.eval(&VertexSet::from_ids(2, [0])), int(1));
        assert_eq!(f.eval(&VertexSet::full(2)), int(3));
        let (l, _) = crate::oracle::density(f.as_ref()).unwrap();
        assert_eq!(l, rat(3, 2));
        let after = crate::oracle::restrict(&f, &VertexSet::from_ids(2, [1])).unwrap();
        assert_eq!(crate::oracle::density(after.as_ref()).unwrap().0, int(1));
        for v in 0..2 {
            let full = VertexSet::full(2);
            let top = f.eval(&full) - f.eval(&full.without(v));
            assert_eq!(top, inst.h.eval(&VertexSet::from_ids(2, [v])) + int(1));
        }

        let zero = capped(3, 0);
        let (f, _) = reduce_cover_to_dd(&zero);
        assert_eq!(f.eval(&VertexSet::full(3)), int(3));
        assert_eq!(crate::oracle::density(f.as_ref()).unwrap().0, int(1));
        assert!(greedy_cover(&zero).set.is_empty());
    }

    #[test]
    fn greedy_examples() {
        let inst = reduce_dd_to_cover(graph_oracle(&k4()), vec![Cost::one(); 4], int(1)).unwrap();
        let g = greedy_cover(&inst);
        assert_eq!(g.picks, vec![0]);
        assert_eq!(g.cost, Cost::one());
        assert!(g.finite);

        let mut costs = vec![Cost::Infinite, Cost::finite(int(3)).unwrap(), Cost::zero(), Cost::one()];
        let inst = SubmodCoverInstance::new(
            Arc::new(Capped {
                ground: VertexSet::full(4),
                cap: 2,
            }),
            costs.clone(),
        )
        .unwrap();
        assert_eq!(greedy_cover(&inst).picks, vec![2, 3]);

        costs[3] = Cost::Infinite;
        costs[1] = Cost::Infinite;
        let inst = SubmodCoverInstance::new(
            Arc::new(Capped {
                ground: VertexSet::full(4),
                cap: 2,
            }),
            costs,
        )
        .unwrap();
        let g = greedy_cover(&inst);
        assert_eq!(g.picks, vec![2, 0]);
        assert!(!g.finite);
    }

    #[test]
    fn wolsey_factor_needs_unit_singletons() {
        assert!(wolsey_factor(&capped(3, 0)).is_none());
        let f = wolsey_factor(&capped(3, 1)).unwrap();
        assert!((1.0..1.0 + 1e-12).contains(&f));
    }
}
