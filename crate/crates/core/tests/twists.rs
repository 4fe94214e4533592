use num_rational::Ratio;
use proptest::prelude::*;

use ptorsion::arith::gcd;
use ptorsion::group::table::FiniteGroupTable;
use ptorsion::group::twist::{
    base_change, conjugacy_descriptors, h1_cyclic_oracle, merge_twists_coprime, twist_aut_order,
    twists_over, AbelianPresentation,
};

fn small_group() -> impl Strategy<Value = FiniteGroupTable> {
    prop_oneof![
        (1usize..=30).prop_map(|k| FiniteGroupTable::cyclic(k).unwrap()),
        (1usize..=4).prop_map(|k| FiniteGroupTable::symmetric(k).unwrap()),
        Just(FiniteGroupTable::general_linear(2, 2, 1).unwrap()),
        Just(FiniteGroupTable::general_linear(2, 3, 1).unwrap()),
        Just(FiniteGroupTable::abelian(&[2, 4]).unwrap()),
    ]
}

fn class_of(g: &FiniteGroupTable, a: usize) -> usize {
    g.conjugacy_classes()
        .iter()
        .position(|c| (0..g.order()).any(|y| g.conjugate(c.rep(), y) == a))
        .expect("every element lies in a class")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twists_match_oracle(g in small_group(), m in 1u64..=12) {
        prop_assert_eq!(twists_over(&g, m).unwrap().len(), h1_cyclic_oracle(&g, m).unwrap());
    }

    #[test]
    fn base_change_respects_classes(g in small_group(), a in 0usize..1000, y in 0usize..1000, r in 1u64..=6) {
        let (a, y) = (a % g.order(), y % g.order());
        let b = g.conjugate(a, y);
        let ra = base_change(&g, a, r).unwrap();
        let rb = base_change(&g, b, r).unwrap();
        prop_assert_eq!(class_of(&g, ra), class_of(&g, rb));
    }

    #[test]
    fn class_times_centralizer_is_order(g in small_group()) {
        let mut mass = Ratio::from_integer(0u64);
        for d in conjugacy_descriptors(&g) {
            prop_assert_eq!(d.class_size * d.centralizer_order, g.order());
            prop_assert_eq!(twist_aut_order(&g, d.rep), d.centralizer_order);
            mass += Ratio::new(d.class_size as u64, g.order() as u64);
        }
        prop_assert_eq!(mass, Ratio::from_integer(1));
    }

    #[test]
    fn coprime_merge_solves(moduli in prop::collection::vec(1u64..=12, 1..=3), seed in any::<u64>(), r in 1u64..=10, s in 1u64..=10) {
        prop_assume!(gcd(r, s) == 1);
        let group = AbelianPresentation::new(moduli.clone()).unwrap();
        let a: Vec<u64> = moduli.iter().enumerate().map(|(i, &m)| (seed >> (8 * i)) % m).collect();
        let (b, c) = merge_twists_coprime(&group, &a, r, s).unwrap();
        prop_assert_eq!(group.add(&group.scale(r as i64, &c), &a), group.scale(s as i64, &b));
    }
}

#[test]
fn merge_rejects_common_factor() {
    let group = AbelianPresentation::new(vec![6]).unwrap();
    assert!(merge_twists_coprime(&group, &[1], 2, 4).is_err());
}

#[test]
fn symmetric_three_over_small_degrees() {
    let s3 = FiniteGroupTable::symmetric(3).unwrap();
    // identity, transpositions, 3-cycles
    assert_eq!(twists_over(&s3, 1).unwrap().len(), 1);
    assert_eq!(twists_over(&s3, 2).unwrap().len(), 2);
    assert_eq!(twists_over(&s3, 3).unwrap().len(), 2);
    assert_eq!(twists_over(&s3, 6).unwrap().len(), 3);
}
