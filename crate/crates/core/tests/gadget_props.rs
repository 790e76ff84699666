mod common;

use common::random_uniform_set_cover;
use densdel::brute::{brute_opt_deletion, brute_set_cover};
use densdel::densest::check_density_integral;
use densdel::gadgets::{build_gadget, build_warmup_gadget, extract_cover, SetCoverInstance};
use densdel::rational::int;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn every_cover(sc: &SetCoverInstance) -> Vec<Vec<usize>> {
    let k = sc.sets().len();
    (0..1u64 << k)
        .map(|t| (0..k).filter(|i| t >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|c| sc.is_cover(c))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tree_gadget_round_trip(seed in any::<u64>(), universe in 1usize..=3, rho in 2u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sc = random_uniform_set_cover(&mut rng, universe, 6, 4);
        let gi = build_gadget(&sc, rho).unwrap();
        let best = brute_set_cover(&sc).unwrap();
        let opt = brute_opt_deletion(&gi.graph, &int(rho as i64)).unwrap();
        prop_assert_eq!(opt.value.as_ref(), best.value.as_finite());
        for w in &opt.witnesses {
            let c = extract_cover(&gi, w).unwrap();
            prop_assert_eq!(&c.cost, &best.value);
        }
        for cover in every_cover(&sc) {
            let residual = gi.graph.delete(&gi.deletion_for(&cover)).unwrap();
            prop_assert!(check_density_integral(&residual, rho).unwrap().is_some());
        }
    }

    #[test]
    fn warmup_gadget_round_trip(seed in any::<u64>(), universe in 1usize..=3, freq in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sc = random_uniform_set_cover(&mut rng, universe, 5, freq);
        let gi = build_warmup_gadget(&sc).unwrap();
        let best = brute_set_cover(&sc).unwrap();
        let opt = brute_opt_deletion(&gi.graph, &int(gi.rho as i64)).unwrap();
        prop_assert_eq!(opt.value.as_ref(), best.value.as_finite());
        for cover in every_cover(&sc) {
            let c = extract_cover(&gi, &gi.deletion_for(&cover)).unwrap();
            prop_assert_eq!(c.sets, cover);
        }
    }
}
