//! Randomized algebraic invariants of the ring layer and the rational wire
//! format.

use fracindex::catalog::cp;
use fracindex::rational::{format_rational, parse_rational, rat_i64, Rational};
use fracindex::ring::CohClass;
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1u64..=1_000_000).prop_map(|(n, d)| {
        Rational::new(n.into(), d.into())
    })
}

/// A random class in the CP^4 model (5-dimensional coefficient vector with
/// small rational entries).
fn arb_class() -> impl Strategy<Value = CohClass> {
    prop::collection::vec((-40i64..=40, 1i64..=12), 5).prop_map(|entries| {
        let ring = cp(4).ring().clone();
        let coeffs = entries
            .into_iter()
            .map(|(n, d)| Rational::new(n.into(), d.into()))
            .collect();
        CohClass::from_coeffs(&ring, coeffs)
    })
}

proptest! {
    #[test]
    fn rational_wire_format_roundtrips(q in arb_rational()) {
        let s = format_rational(&q);
        prop_assert_eq!(parse_rational(&s).unwrap(), q.clone());
        // canonical: integers have no slash, everything else is p/q reduced
        if q.denom() == &num_bigint::BigInt::from(1) {
            prop_assert!(!s.contains('/'));
        } else {
            prop_assert!(s.contains('/'));
        }
    }

    #[test]
    fn ring_mul_commutes(a in arb_class(), b in arb_class()) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn ring_mul_associates(a in arb_class(), b in arb_class(), c in arb_class()) {
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_mul_distributes(a in arb_class(), b in arb_class(), c in arb_class()) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_turns_sums_into_products(a in arb_class(), b in arb_class()) {
        // exp is defined on classes with no degree-0 part
        let a = a.sub(&a.component(0)).unwrap();
        let b = b.sub(&b.component(0)).unwrap();
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integrate_is_linear(a in arb_class(), b in arb_class(), s in -9i64..=9) {
        let lhs = a.add(&b.scale(&rat_i64(s))).unwrap().integrate();
        let rhs = a.integrate() + b.integrate() * rat_i64(s);
        prop_assert_eq!(lhs, rhs);
    }
}
