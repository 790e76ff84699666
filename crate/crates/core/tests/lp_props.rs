mod common;

use common::{arb_costs, arb_graph, arb_loopless_graph, arb_rho};
use densdel::brute::brute_opt_deletion;
use densdel::lp::{build_orientation_lp, round_threshold, solve_lp, LinearProgram, LpStatus, Relation};
use densdel::rational::{int, rat};
use densdel::MultiGraph;
use proptest::prelude::*;

fn vertex_cover_lp(g: &MultiGraph) -> densdel::Rational {
    let mut lp = LinearProgram::new(g.n());
    lp.objective = g.costs().iter().map(|c| c.as_finite().unwrap().clone()).collect();
    for e in g.edges() {
        if e.is_loop() {
            lp.add(vec![(e.u, int(1))], Relation::Ge, int(1)).unwrap();
        } else {
            lp.add(vec![(e.u, int(1)), (e.v, int(1))], Relation::Ge, int(1)).unwrap();
        }
    }
    let s = lp.solve();
    assert_eq!(s.status, LpStatus::Optimal);
    s.objective
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rounding_bounds_hold(
        (g, costs) in arb_graph(8, 14).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_costs(n)) }),
        rho in arb_rho(),
        k in 1i64..=3,
    ) {
        let g = g.with_costs(costs).unwrap();
        let eps = rat(k, 8);
        let olp = build_orientation_lp(&g, &rho).unwrap();
        let sol = solve_lp(&olp).unwrap();
        prop_assert_eq!(sol.status, LpStatus::Optimal);
        prop_assert!(olp.lp.satisfied_by(&sol.values));
        let r = round_threshold(&g, &rho, &eps).unwrap();
        prop_assert_eq!(&r.lp_value, &sol.objective);
        prop_assert!(r.density_ok && r.cost_ok && r.orientation_ok);
        prop_assert!(r.residual_density <= &rho / (int(1) - int(2) * &eps));
        prop_assert!(r.cost.as_finite().unwrap() <= &(&r.lp_value / &eps));
        for u in 0..g.n() {
            prop_assert_eq!(r.deletion.contains(u), r.x[u] > eps);
        }
        let opt = brute_opt_deletion(&g, &rho).unwrap().value.unwrap();
        prop_assert!(r.lp_value <= opt);
    }

    #[test]
    fn rho_zero_is_vertex_cover(
        (g, costs) in arb_loopless_graph(8, 12).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_costs(n)) }),
    ) {
        let g = g.with_costs(costs).unwrap();
        let sol = solve_lp(&build_orientation_lp(&g, &int(0)).unwrap()).unwrap();
        prop_assert_eq!(sol.objective, vertex_cover_lp(&g));
    }
}
