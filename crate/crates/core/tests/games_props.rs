mod common;

use capmatch::games::{check_core_allocation, cover_allocation, nbg_has_stable_outcome};
use capmatch::solvers::is_stable_graph;
use common::small_graph;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn stable_graphs_have_core_allocations(g in small_graph(7, 3)) {
        let cert = is_stable_graph(&g).unwrap();
        prop_assert_eq!(nbg_has_stable_outcome(&g).unwrap(), cert.stable);
        if cert.stable {
            let y = cover_allocation(&g, &cert.cover).unwrap();
            let check = check_core_allocation(&g, &y).unwrap();
            prop_assert!(check.in_core, "violated by {:?}", check.violating);
        }
    }
}
