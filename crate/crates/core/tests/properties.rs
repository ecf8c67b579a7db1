use std::cmp::Ordering;

use gw_core::partitions::{key_compare, mobius, refines, set_partitions, InvariantKey, WeightedPartition};
use gw_core::quantum::QuantumClass;
use gw_core::rational::{int, Rational};
use gw_core::ring::{RingElement, Space};
use num_bigint::BigInt;
use proptest::prelude::*;

fn spaces() -> Vec<Space> {
    vec![
        Space::projective(3).unwrap(),
        Space::grassmannian(2, 4).unwrap(),
        Space::grassmannian(2, 5).unwrap(),
    ]
}

fn element(space: &Space, coeffs: &[i64]) -> RingElement {
    RingElement::from_coefficients(space, coeffs.iter().enumerate().take(space.rank()).map(|(i, &c)| (i, int(c))))
}

proptest! {
    #[test]
    fn cup_is_commutative_and_associative(
        s in 0usize..3,
        a in prop::collection::vec(-3i64..4, 10),
        b in prop::collection::vec(-3i64..4, 10),
        c in prop::collection::vec(-3i64..4, 10),
    ) {
        let space = &spaces()[s];
        let (a, b, c) = (element(space, &a), element(space, &b), element(space, &c));
        prop_assert_eq!(a.cup(&b).unwrap(), b.cup(&a).unwrap());
        prop_assert_eq!(a.cup(&b).unwrap().cup(&c).unwrap(), a.cup(&b.cup(&c).unwrap()).unwrap());
        let left = a.add(&b).unwrap().cup(&c).unwrap();
        prop_assert_eq!(left, a.cup(&c).unwrap().add(&b.cup(&c).unwrap()).unwrap());
    }

    #[test]
    fn dual_basis_pairs_to_one(s in 0usize..3) {
        let space = &spaces()[s];
        for i in 0..space.rank() {
            for j in 0..space.rank() {
                let v = RingElement::basis(space, i).cup(&RingElement::basis(space, j)).unwrap().integrate();
                let expected = if j == space.dual_index(i) { int(1) } else { int(0) };
                prop_assert_eq!(v, expected);
            }
        }
    }

    #[test]
    fn quantum_product_is_associative(i in 0usize..10, j in 0usize..10, k in 0usize..10) {
        let g = Space::grassmannian(2, 5).unwrap();
        let cls = |x: usize| QuantumClass::classical(RingElement::basis(&g, x));
        let (a, b, c) = (cls(i), cls(j), cls(k));
        prop_assert_eq!(a.star(&b).unwrap(), b.star(&a).unwrap());
        prop_assert_eq!(a.star(&b).unwrap().star(&c).unwrap(), a.star(&b.star(&c).unwrap()).unwrap());
        prop_assert!(a.star(&b).unwrap().degree().is_some());
    }

    #[test]
    fn partition_text_round_trips(total in 1u32..5, pick in 0usize..1000) {
        let p2 = Space::projective(2).unwrap();
        let all = WeightedPartition::enumerate(&p2, total);
        let p = &all[pick % all.len()];
        prop_assert_eq!(&WeightedPartition::parse(&p2, &p.to_string()).unwrap(), p);
        prop_assert_eq!(&p.dual().dual(), p);
        prop_assert_eq!(p.total_weight(), total);
    }
}

fn p1_keys() -> Vec<InvariantKey> {
    let p1 = Space::projective(1).unwrap();
    let classes = [p1.unit(), p1.point_class()];
    let mut insertion_lists = vec![vec![]];
    for a in &classes {
        insertion_lists.push(vec![a.clone()]);
        for b in &classes {
            insertion_lists.push(vec![a.clone(), b.clone()]);
        }
    }
    let mut keys = Vec::new();
    for degree in 0..=2 {
        for ins in &insertion_lists {
            for w in 0..=3 {
                for p in WeightedPartition::enumerate(&p1, w) {
                    keys.push(InvariantKey::new(degree, ins.clone(), p));
                }
            }
        }
    }
    keys
}

proptest! {
    #[test]
    fn key_order_is_strict(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let keys = p1_keys();
        let (a, b, c) = (&keys[i % keys.len()], &keys[j % keys.len()], &keys[k % keys.len()]);
        let less = |x: &InvariantKey, y: &InvariantKey| key_compare(x, y) == Some(Ordering::Less);
        prop_assert!(!less(a, a));
        prop_assert!(!(less(a, b) && less(b, a)));
        if less(a, b) && less(b, c) {
            prop_assert!(less(a, c));
        }
    }

    #[test]
    fn mobius_inverts_zeta(n in 1usize..5, i in 0usize..100, j in 0usize..100) {
        let all = set_partitions(n);
        let s = &all[i % all.len()];
        let t = &all[j % all.len()];
        let sum: BigInt = all
            .iter()
            .filter(|p| refines(s, p) && refines(p, t))
            .map(|p| mobius(s, p))
            .sum();
        let expected = BigInt::from(if s == t { 1 } else { 0 });
        prop_assert_eq!(if refines(s, t) { sum } else { BigInt::from(0) }, if refines(s, t) { expected } else { BigInt::from(0) });
    }
}

#[test]
fn rationals_print_reduced() {
    let r = Rational::new(int(6).to_integer(), int(-4).to_integer());
    assert_eq!(gw_core::rational::format(&r), "-3/2");
    assert_eq!(gw_core::rational::parse("-3/2").unwrap(), r);
}
