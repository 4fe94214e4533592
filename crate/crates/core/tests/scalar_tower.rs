use proptest::prelude::*;
use ptorsion::scalar::{lift_modulus, unit_root, FqElem, WittElem, WittRing};

/// Remainder of `num` by the monic `den` over `Z/m`, schoolbook on `i64`.
fn rem_monic(num: &[i64], den: &[i64], m: i64) -> Vec<i64> {
    let mut r: Vec<i64> = num.iter().map(|c| c.rem_euclid(m)).collect();
    let d = den.len() - 1;
    for top in (d..r.len()).rev() {
        let c = r[top];
        for (i, &f) in den.iter().enumerate() {
            r[top - d + i] = (r[top - d + i] - c * f).rem_euclid(m);
        }
    }
    r.truncate(d);
    r
}

#[test]
fn quadratic_lift_over_z4_matches_exhaustive_search() {
    // X^3 - 1 over Z/4
    let target = [3i64, 0, 0, 1];
    let mut hits = Vec::new();
    for c0 in 0..4i64 {
        for c1 in 0..4i64 {
            let reduces = c0 % 2 == 1 && c1 % 2 == 1;
            let divides = rem_monic(&target, &[c0, c1, 1], 4).iter().all(|&c| c == 0);
            if reduces && divides {
                hits.push(vec![c0 as u64, c1 as u64, 1]);
            }
        }
    }
    assert_eq!(hits.len(), 1);
    assert_eq!(lift_modulus(2, 2, 2).unwrap().lifted_modulus, hits[0]);
}

#[test]
fn frobenius_on_generator_for_p2_h2_n2() {
    let r = WittRing::new(2, 2, 2).unwrap();
    let t = r.gen();
    assert_eq!(r.frobenius(&t, 1), r.mul(&t, &t));
    assert_eq!(r.frobenius(&r.frobenius(&t, 1), 1), t);
    assert_eq!(r.frobenius(&t, -1), r.frobenius(&t, 1));
}

#[test]
fn teichmuller_basics_and_multiplicativity_over_f4() {
    let field = WittRing::field(2, 2).unwrap();
    let r = WittRing::new(2, 2, 2).unwrap();
    assert_eq!(r.teichmuller(&field.zero()).unwrap(), r.zero());
    assert_eq!(r.teichmuller(&field.one()).unwrap(), r.one());
    assert_eq!(r.teichmuller(&field.gen()).unwrap(), r.gen());
    let els = field.elements().unwrap();
    assert_eq!(els.len(), 4);
    for a in &els {
        for b in &els {
            let lhs = r.teichmuller(&field.mul(a, b)).unwrap();
            let rhs = r.mul(&r.teichmuller(a).unwrap(), &r.teichmuller(b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn frobenius_is_p_power_at_level_one() {
    for (p, h) in [(2, 3), (3, 2), (5, 2), (2, 4)] {
        let f = WittRing::field(p, h).unwrap();
        for x in f.elements().unwrap() {
            assert_eq!(f.frobenius(&x, 1), f.pow(&x, p));
            assert_eq!(f.frobenius(&x, h as i64), x);
        }
    }
}

#[test]
fn frobenius_is_a_homomorphism_exhaustively_on_small_rings() {
    for (p, h, n) in [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (5, 2, 1)] {
        let r = WittRing::new(p, h, n).unwrap();
        let els = r.elements().unwrap();
        for a in &els {
            for b in &els {
                assert_eq!(
                    r.frobenius(&r.add(a, b), 1),
                    r.add(&r.frobenius(a, 1), &r.frobenius(b, 1))
                );
                assert_eq!(
                    r.frobenius(&r.mul(a, b), 1),
                    r.mul(&r.frobenius(a, 1), &r.frobenius(b, 1))
                );
            }
            assert_eq!(r.frobenius(a, h as i64), *a);
        }
    }
}

#[test]
fn lifted_modulus_divides_x_pow_q_minus_one() {
    for (p, h, n) in [(2, 2, 3), (3, 3, 2), (5, 2, 3), (2, 5, 2), (7, 2, 2)] {
        let w = lift_modulus(p, h, n).unwrap();
        let m = (p as i64).pow(n);
        let q = (p as usize).pow(h as u32);
        let mut target = vec![0i64; q];
        target[0] = -1;
        target[q - 1] = 1;
        let den: Vec<i64> = w.lifted_modulus.iter().map(|&c| c as i64).collect();
        assert!(
            rem_monic(&target, &den, m).iter().all(|&c| c == 0),
            "{p} {h} {n}"
        );
    }
}

fn arb_params() -> impl Strategy<Value = (u64, usize, u32)> {
    prop_oneof![
        Just((2, 1, 4)),
        Just((2, 2, 3)),
        Just((2, 3, 2)),
        Just((2, 4, 4)),
        Just((3, 2, 2)),
        Just((3, 3, 1)),
        Just((5, 2, 2)),
        Just((7, 1, 3)),
        Just((13, 2, 1)),
    ]
}

fn arb_elem(r: &WittRing, seed: &[u64]) -> WittElem {
    WittElem(seed.iter().take(r.h()).map(|s| s % r.modulus()).collect())
}

proptest! {
    #[test]
    fn ring_axioms((p, h, n) in arb_params(), xs in prop::collection::vec(any::<u64>(), 12)) {
        let r = WittRing::new(p, h, n).unwrap();
        let a = arb_elem(&r, &xs[0..4]);
        let b = arb_elem(&r, &xs[4..8]);
        let c = arb_elem(&r, &xs[8..12]);
        prop_assert_eq!(r.mul(&a, &r.mul(&b, &c)), r.mul(&r.mul(&a, &b), &c));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        if r.is_unit(&a) {
            prop_assert_eq!(r.mul(&a, &r.inv(&a).unwrap()), r.one());
        }
    }

    #[test]
    fn sigma_homomorphism_and_order((p, h, n) in arb_params(), xs in prop::collection::vec(any::<u64>(), 8), k in -5i64..5) {
        let r = WittRing::new(p, h, n).unwrap();
        let a = arb_elem(&r, &xs[0..4]);
        let b = arb_elem(&r, &xs[4..8]);
        prop_assert_eq!(r.frobenius(&r.mul(&a, &b), k), r.mul(&r.frobenius(&a, k), &r.frobenius(&b, k)));
        prop_assert_eq!(r.frobenius(&r.frobenius(&a, k), -k), a.clone());
        prop_assert_eq!(r.frobenius(&a, h as i64), a.clone());
        // reduces mod p to the p-power map
        let f = WittRing::field(p, h).unwrap();
        let ab = r.truncate(&a, 1);
        prop_assert_eq!(r.truncate(&r.frobenius(&a, 1), 1), f.pow(&ab, p));
    }

    #[test]
    fn truncations_are_compatible((p, h, n) in arb_params(), m in 1u32..5) {
        let m = m.min(n);
        let hi = lift_modulus(p, h, n).unwrap().lifted_modulus;
        let lo = lift_modulus(p, h, m).unwrap().lifted_modulus;
        let pm = p.pow(m);
        prop_assert_eq!(hi.iter().map(|c| c % pm).collect::<Vec<_>>(), lo);
    }

    #[test]
    fn teichmuller_is_multiplicative((p, h, n) in arb_params(), xs in prop::collection::vec(any::<u64>(), 8)) {
        let r = WittRing::new(p, h, n).unwrap();
        let f = WittRing::field(p, h).unwrap();
        let a: FqElem = arb_elem(&f, &xs[0..4]);
        let b: FqElem = arb_elem(&f, &xs[4..8]);
        let wa = r.teichmuller(&a).unwrap();
        prop_assert_eq!(r.truncate(&wa, 1), a.clone());
        prop_assert_eq!(r.teichmuller(&f.mul(&a, &b)).unwrap(), r.mul(&wa, &r.teichmuller(&b).unwrap()));
    }

    #[test]
    fn unit_root_truncation((p, e) in prop_oneof![Just((3u64, 2u32)), Just((5, 1)), Just((5, 2)), Just((7, 1)), Just((3, 4))], a in -60i64..60, n in 1u32..5) {
        let q = p.pow(e);
        prop_assume!(a.rem_euclid(p as i64) != 0);
        let hi = unit_root(a, q, p, n).unwrap();
        for m in 1..=n {
            prop_assert_eq!(hi % p.pow(m), unit_root(a, q, p, m).unwrap());
        }
        let pn = p.pow(n) as i128;
        let x = hi as i128;
        prop_assert_eq!((x * x - a as i128 * x + q as i128).rem_euclid(pn), 0);
    }
}

#[test]
fn unit_root_oracle_mod_25() {
    let hits: Vec<u64> = (0..25u64)
        .filter(|x| x % 5 == 1 && (x * x + 25 - x + 5) % 25 == 0)
        .collect();
    assert_eq!(hits, vec![21]);
    assert_eq!(unit_root(1, 5, 5, 2).unwrap(), 21);
}
