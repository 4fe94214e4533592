use proptest::prelude::*;

use ptorsion::dieudonne::{
    automorphism_order, endomorphism_algebra, is_endomorphism, minimal_module, ordinary_module,
    polarized_double, DieudonneModule, RingMat,
};
use ptorsion::scalar::WittRing;

/// Coprime `(c, d)` with `c + d <= 5`.
fn slope() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![
        Just((1, 0)),
        Just((0, 1)),
        Just((1, 1)),
        Just((2, 1)),
        Just((1, 2)),
        Just((3, 1)),
        Just((1, 3)),
        Just((3, 2)),
        Just((2, 3)),
        Just((4, 1)),
        Just((1, 4))
    ]
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5)]
}

/// Keeps the Witt ring `W_n(F_{p^h})` within the table guard.
fn fits(p: u64, c: usize, d: usize, n: u32) -> bool {
    (p as u128)
        .checked_pow((c + d) as u32 * n)
        .is_some_and(|s| s <= 1 << 32)
}

fn is_scalar_p(m: &DieudonneModule, a: &RingMat) -> bool {
    *a == RingMat::scalar(m.rank(), m.h(), m.p() % m.ring().modulus())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fv_is_p((c, d) in slope(), p in prime(), n in 1u32..=3) {
        prop_assume!(fits(p, c, d, n));
        let m = minimal_module(p, c, d, n).unwrap();
        prop_assert!(is_scalar_p(&m, &m.fv()));
        prop_assert!(is_scalar_p(&m, &m.vf()));
    }

    #[test]
    fn minimal_modules_are_bt1((c, d) in slope(), p in prime()) {
        prop_assert!(minimal_module(p, c, d, 1).unwrap().bt1_check().unwrap());
    }

    #[test]
    fn ordinary_and_sums_are_bt1(g in 1usize..=3, p in prime(), (c, d) in slope()) {
        let o = ordinary_module(p, g, 1).unwrap();
        prop_assert!(o.bt1_check().unwrap());
        let sum = minimal_module(p, c, d, 1).unwrap().direct_sum(&minimal_module(p, d, c, 1).unwrap()).unwrap();
        prop_assert!(sum.bt1_check().unwrap());
    }

    #[test]
    fn endomorphisms_are_closed_under_products((c, d) in slope(), p in prime(), n in 1u32..=2, i in 0usize..64, j in 0usize..64) {
        prop_assume!(fits(p, c, d, n));
        let m = minimal_module(p, c, d, n).unwrap();
        let gens = endomorphism_algebra(&m, false).unwrap().generator_matrices();
        prop_assume!(!gens.is_empty());
        let (a, b) = (&gens[i % gens.len()], &gens[j % gens.len()]);
        let r = m.ring();
        prop_assert!(is_endomorphism(&m, a));
        prop_assert!(is_endomorphism(&m, &a.mul(b, r)));
        prop_assert!(is_endomorphism(&m, &a.add(b, r)));
    }

    #[test]
    fn text_round_trip((c, d) in slope(), p in prime(), n in 1u32..=3, polarized in any::<bool>()) {
        prop_assume!(fits(p, c, d, n));
        let m = if polarized && c != d && c + d > 1 {
            polarized_double(p, c, d, n).unwrap()
        } else {
            minimal_module(p, c, d, n).unwrap()
        };
        prop_assert_eq!(DieudonneModule::from_text(&m.to_text()).unwrap(), m);
    }
}

/// A random invertible matrix over the residue field: a product of
/// elementary transvections.
fn random_basis(ring: &WittRing, rank: usize, moves: &[(usize, usize, u64)]) -> RingMat {
    let h = ring.h();
    let mut b = RingMat::identity(rank, h);
    for &(i, j, x) in moves {
        let (i, j) = (i % rank, j % rank);
        if i == j {
            continue;
        }
        let mut e = RingMat::identity(rank, h);
        e.entry_mut(i, j)[0] = x % ring.p();
        b = b.mul(&e, ring);
    }
    b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn aut_order_is_basis_independent(moves in prop::collection::vec((0usize..6, 0usize..6, 0u64..5), 0..8), which in 0usize..3) {
        let m = match which {
            0 => minimal_module(2, 2, 1, 1).unwrap(),
            1 => minimal_module(3, 1, 1, 1).unwrap(),
            _ => ordinary_module(5, 1, 1).unwrap().without_pairing(),
        };
        let b = random_basis(m.ring(), m.rank(), &moves);
        let moved = m.change_basis(&b).unwrap();
        prop_assert_eq!(automorphism_order(&moved, 1).unwrap(), automorphism_order(&m, 1).unwrap());
    }
}

#[test]
fn h21_aut_matches_exhaustive_count() {
    let m = minimal_module(2, 2, 1, 1).unwrap();
    assert_eq!(automorphism_order(&m, 1).unwrap(), 448);
    assert_eq!(endomorphism_algebra(&m, false).unwrap().log_size(), 9);
}
