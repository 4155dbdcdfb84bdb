use std::collections::BTreeMap;

use proptest::prelude::*;

use betti_morse::engine::{compute_both_with, EngineOptions};
use betti_morse::monomial::polarize;
use betti_morse::oracle::oracle_betti_table;
use betti_morse::random::{random_ideal, DegreeSpec};
use betti_morse::{compute_betti_table, FieldKind, MonomialIdeal, Start};

fn arb_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (2usize..6, 1usize..7, 1u32..4, any::<u64>())
        .prop_filter_map("infeasible draw", |(n, r, d, seed)| random_ideal(n, r, DegreeSpec::Range(1, d.max(1)), seed).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polarization_preserves_graded_and_depolarizes_multigraded(ideal in arb_ideal()) {
        let pol = polarize(&ideal);
        prop_assert!(pol.ideal.is_squarefree());
        let opts = EngineOptions::new(FieldKind::Rational, Start::Lyubeznik);
        let (t, mb) = compute_both_with(&ideal, &opts).unwrap();
        let (pt, pmb) = compute_both_with(&pol.ideal, &opts).unwrap();
        prop_assert_eq!(&t, &pt);
        prop_assert_eq!(pt, oracle_betti_table(&pol.ideal, FieldKind::Rational).unwrap());
        let mut folded: BTreeMap<(usize, Vec<u32>), u64> = BTreeMap::new();
        for (i, a, c) in pmb.iter() {
            *folded.entry((i, pol.depolarize(a))).or_default() += c;
        }
        let direct: BTreeMap<(usize, Vec<u32>), u64> = mb.iter().map(|(i, a, c)| ((i, a.to_vec()), c)).collect();
        prop_assert_eq!(folded, direct);
    }

    #[test]
    fn generator_order_does_not_matter(ideal in arb_ideal(), keys in proptest::collection::vec(any::<u32>(), 7)) {
        let mut order: Vec<usize> = (0..ideal.num_generators()).collect();
        order.sort_by_key(|&k| keys[k]);
        let permuted = ideal.permuted(&order);
        for field in [FieldKind::Rational, FieldKind::Prime(3)] {
            prop_assert_eq!(
                compute_betti_table(&ideal, field, Start::Lyubeznik).unwrap(),
                compute_betti_table(&permuted, field, Start::Lyubeznik).unwrap()
            );
        }
    }

    #[test]
    fn both_starts_agree(ideal in arb_ideal()) {
        prop_assert_eq!(
            compute_betti_table(&ideal, FieldKind::Prime(2), Start::Taylor).unwrap(),
            compute_betti_table(&ideal, FieldKind::Prime(2), Start::Lyubeznik).unwrap()
        );
    }
}
