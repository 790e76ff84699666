mod common;

use common::{all_subsets, arb_graph, arb_hypergraph, arb_loopless_graph, arb_rho};
use densdel::brute::brute_density;
use densdel::oracle::{
    cf_bruteforce, contract, density, exhaustive_excess, excess_max, graph_oracle, hypergraph_oracle,
    pmean_oracle, restrict, Oracle,
};
use densdel::rational::int;
use densdel::{Rational, VertexSet};
use num_bigint::BigInt;
use proptest::prelude::*;

fn axioms(f: &Oracle) -> Result<(), TestCaseError> {
    let members: Vec<usize> = f.ground().iter().collect();
    let sets = all_subsets(f.universe(), &members);
    prop_assert_eq!(f.eval(&VertexSet::empty(f.universe())), int(0));
    for a in &sets {
        let fa = f.eval(a);
        prop_assert!(fa >= int(0));
        for b in &sets {
            let fb = f.eval(b);
            if a.is_subset(b) {
                prop_assert!(fa <= fb);
            }
            prop_assert!(&fa + &fb <= f.eval(&a.union(b)) + f.eval(&a.intersection(b)));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_oracle_is_supermodular(g in arb_graph(6, 12)) {
        axioms(&graph_oracle(&g))?;
    }

    #[test]
    fn hypergraph_oracle_is_supermodular(h in arb_hypergraph(6, 8, 3)) {
        axioms(&hypergraph_oracle(&h))?;
    }

    #[test]
    fn pmean_oracle_is_supermodular(g in arb_loopless_graph(6, 10), p in 1u32..=3) {
        axioms(&pmean_oracle(&g, p).unwrap())?;
    }

    #[test]
    fn contraction_preserves_axioms(g in arb_graph(6, 12), mask in 0u64..64) {
        let f = graph_oracle(&g);
        let members: Vec<usize> = (0..g.n()).collect();
        let base = VertexSet::from_mask(g.n(), &members, mask & ((1 << g.n()) - 1));
        axioms(&contract(&f, &base).unwrap())?;
        axioms(&restrict(&f, &base).unwrap())?;
    }

    #[test]
    fn native_excess_agrees(g in arb_graph(8, 16), h in arb_hypergraph(8, 10, 3), rho in arb_rho(), mask in 0u64..256) {
        for f in [graph_oracle(&g), hypergraph_oracle(&h)] {
            let members: Vec<usize> = (0..f.universe()).collect();
            let within = VertexSet::from_mask(f.universe(), &members, mask & ((1 << f.universe()) - 1));
            prop_assert_eq!(
                excess_max(f.as_ref(), &rho, &within).unwrap(),
                exhaustive_excess(f.as_ref(), &rho, &within).unwrap()
            );
            let c = contract(&f, &within).unwrap();
            let rest = c.ground().clone();
            prop_assert_eq!(
                excess_max(c.as_ref(), &rho, &rest).unwrap(),
                exhaustive_excess(c.as_ref(), &rho, &rest).unwrap()
            );
        }
    }

    #[test]
    fn density_matches_enumeration(g in arb_loopless_graph(6, 10), p in 1u32..=3) {
        let f = pmean_oracle(&g, p).unwrap();
        let (lambda, witness) = density(f.as_ref()).unwrap();
        let slow = brute_density(f.as_ref()).unwrap();
        prop_assert_eq!(&lambda, &slow.value);
        prop_assert_eq!(Some(witness), slow.union());
    }

    #[test]
    fn cf_within_family_bounds(g in arb_graph(7, 12), h in arb_hypergraph(7, 8, 3), pg in arb_loopless_graph(6, 10), p in 1u32..=3) {
        let two = cf_bruteforce(graph_oracle(&g).as_ref()).unwrap().value;
        prop_assert!(two >= int(1) && two <= int(2));
        let r = Rational::from_integer(BigInt::from(h.rank().max(1)));
        prop_assert!(cf_bruteforce(hypergraph_oracle(&h).as_ref()).unwrap().value <= r);
        let f = pmean_oracle(&pg, p).unwrap();
        prop_assert!(cf_bruteforce(f.as_ref()).unwrap().value <= f.analytic_cf().unwrap());
    }
}
