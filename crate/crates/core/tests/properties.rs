//! Property tests for the algebraic invariants of folds and searches.

use proptest::prelude::*;

use sigma_sumset_core::{
    classify_symmetry, fold_signed_sumset, fold_sumset, rho_formula, rho_pm_restricted, sdeg,
    symmetrize_step, ElementSet, GroupSpec, SearchOptions, SymmetryClass,
};

/// Groups of order at most ~32, any rank up to 3.
fn arb_group() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (2u64..=24).prop_map(|n| GroupSpec::new(&[n]).unwrap()),
        (2u64..=5, 1u64..=4).prop_map(|(a, k)| GroupSpec::new(&[a, a * k]).unwrap()),
        (2u64..=3, 1u64..=2, 1u64..=2).prop_map(|(a, k1, k2)| GroupSpec::new(&[
            a,
            a * k1,
            a * k1 * k2
        ])
        .unwrap()),
    ]
}

/// A group together with a nonempty subset.
fn arb_group_and_set() -> impl Strategy<Value = (GroupSpec, ElementSet)> {
    arb_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), any::<u64>(), 0..n).prop_map(move |(g, mask, forced)| {
            let full = if n >= 64 { !0u64 } else { (1u64 << n) - 1 };
            let mask = (mask & full) | (1 << forced.min(63));
            let indices: Vec<u64> = (0..n.min(64)).filter(|&i| mask >> i & 1 == 1).collect();
            let set = ElementSet::from_indices(&g, &indices).unwrap();
            (g, set)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn containment_chain((_g, a) in arb_group_and_set(), h in 0u64..=4) {
        let plain = fold_sumset(&a, h).unwrap();
        let signed = fold_signed_sumset(&a, h).unwrap();
        let widened = fold_sumset(&a.union(&a.negated()).unwrap(), h).unwrap();
        prop_assert!(plain.is_subset_of(&signed));
        prop_assert!(signed.is_subset_of(&widened));
    }

    #[test]
    fn symmetric_sets_fold_equal((_g, a) in arb_group_and_set(), h in 0u64..=4) {
        let symmetric = a.union(&a.negated()).unwrap();
        prop_assert_eq!(classify_symmetry(&symmetric), SymmetryClass::Symmetric);
        prop_assert_eq!(
            fold_signed_sumset(&symmetric, h).unwrap(),
            fold_sumset(&symmetric, h).unwrap()
        );
    }

    #[test]
    fn negation_invariance((_g, a) in arb_group_and_set(), h in 0u64..=4) {
        prop_assert_eq!(
            fold_signed_sumset(&a.negated(), h).unwrap(),
            fold_signed_sumset(&a, h).unwrap()
        );
    }

    #[test]
    fn monotonicity((g, a) in arb_group_and_set(), extra in any::<u64>(), h in 0u64..=4) {
        let n = g.order().min(64);
        let mut b = a.clone();
        for i in 0..n {
            if extra >> i & 1 == 1 {
                b.insert_index(i).unwrap();
            }
        }
        prop_assert!(fold_signed_sumset(&a, h).unwrap().is_subset_of(
            &fold_signed_sumset(&b, h).unwrap()
        ));
    }

    #[test]
    fn weight_one_folds((_g, a) in arb_group_and_set()) {
        prop_assert_eq!(fold_sumset(&a, 1).unwrap(), a.clone());
        prop_assert_eq!(
            fold_signed_sumset(&a, 1).unwrap(),
            a.union(&a.negated()).unwrap()
        );
    }

    #[test]
    fn sdeg_bounds((_g, a) in arb_group_and_set()) {
        let s = sdeg(&a);
        prop_assert!(s <= a.len());
        // sdeg counts paired members plus self-inverse ones; parity matches
        // whenever no member is self-inverse
        prop_assert_eq!(sdeg(&a.negated()), s);
    }

    #[test]
    fn symmetrization_reaches_admissible_class((_g, b) in arb_group_and_set(), h in 1u64..=3) {
        let m = b.len();
        let start_sdeg = sdeg(&b);
        prop_assume!(m >= 3 && start_sdeg >= 1 && start_sdeg + 2 <= m);
        let start_signed = fold_signed_sumset(&b, h).unwrap();
        let mut current = b;
        let mut steps = 0u64;
        while sdeg(&current) >= 1 && sdeg(&current) + 2 <= m {
            current = symmetrize_step(&current).unwrap();
            steps += 1;
            prop_assert!(steps <= m.div_ceil(2));
        }
        prop_assert_eq!(current.len(), m);
        let class = classify_symmetry(&current);
        prop_assert!(
            class == SymmetryClass::Symmetric || class == SymmetryClass::NearSymmetric
        );
        prop_assert!(fold_signed_sumset(&current, h).unwrap().is_subset_of(&start_signed));
    }

    #[test]
    fn searched_minimum_between_bounds(g in arb_group(), m_seed in 1u64..=64, h in 2u64..=3) {
        let n = g.order();
        let m = 1 + m_seed % n;
        prop_assume!(n <= 16);
        let out = rho_pm_restricted(&g, m, h, &SearchOptions::default()).unwrap();
        let rho = rho_formula(&g, m, h).unwrap();
        let upm = sigma_sumset_core::u_pm_via_divisors(&g, m, h).unwrap().value;
        prop_assert!(out.value >= rho);
        prop_assert!(out.value <= upm);
        // the witness reproduces the reported value
        prop_assert_eq!(fold_signed_sumset(&out.witness, h).unwrap().len(), out.value);
    }
}
