use proptest::prelude::*;

use kneser_core::setsystem::{
    filter_almost_2_stable, filter_s_stable, filter_transversal, inclusion_minimal, k_subsets, GroundPartition,
    SetSystem,
};

fn family() -> impl Strategy<Value = SetSystem> {
    (2usize..=12).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1u64 << n), 0..24)
            .prop_map(move |masks| SetSystem::from_masks(n, masks).unwrap())
    })
}

proptest! {
    #[test]
    fn stable_sets_are_almost_stable(f in family()) {
        let stable = filter_s_stable(&f, 2).unwrap();
        let almost = filter_almost_2_stable(&f);
        prop_assert!(stable.sets().iter().all(|&s| almost.contains(s)));
    }

    #[test]
    fn filters_commute(f in family(), s in 2usize..4) {
        let part = GroundPartition::consecutive(f.n(), 2).unwrap();
        let a = filter_transversal(&filter_s_stable(&filter_almost_2_stable(&f), s).unwrap(), &part).unwrap();
        let b = filter_almost_2_stable(&filter_s_stable(&filter_transversal(&f, &part).unwrap(), s).unwrap());
        prop_assert_eq!(&a, &b);
        let c = filter_s_stable(&filter_transversal(&filter_almost_2_stable(&f), &part).unwrap(), s).unwrap();
        prop_assert_eq!(a, c);
    }

    #[test]
    fn filters_and_minimal_are_idempotent(f in family(), s in 2usize..4) {
        let m = inclusion_minimal(&f);
        prop_assert_eq!(inclusion_minimal(&m), m.clone());
        prop_assert!(m.is_antichain());
        let st = filter_s_stable(&f, s).unwrap();
        prop_assert_eq!(filter_s_stable(&st, s).unwrap(), st);
    }

    #[test]
    fn few_elements_leave_no_stable_sets(k in 2usize..5, s in 2usize..4) {
        for n in k..s * k {
            prop_assert!(filter_s_stable(&k_subsets(n, k).unwrap(), s).unwrap().is_empty());
        }
    }

    #[test]
    fn json_round_trip(f in family()) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<SetSystem>(&text).unwrap(), f);
    }
}
