use amas::{LaurentPoly, RationalFunc};
use num_bigint::BigInt;
use proptest::prelude::*;

const NVARS: usize = 3;

fn laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((proptest::collection::vec(-2i32..=2, NVARS), -5i64..=5), 0..=max_terms)
        .prop_map(|terms| LaurentPoly::from_terms(NVARS, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn nonzero_laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    laurent(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in laurent(4), b in laurent(4), c in laurent(4)) {
        let zero = LaurentPoly::zero(NVARS);
        let one = LaurentPoly::one(NVARS);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert_eq!(&a - &a, zero);
    }

    #[test]
    fn exact_division_round_trips(a in laurent(5), b in nonzero_laurent(4)) {
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn inexact_division_is_reported(a in nonzero_laurent(4), b in nonzero_laurent(4)) {
        // adding a lone monomial far outside the support breaks divisibility by b
        // unless b is a monomial
        prop_assume!(b.len() > 1);
        let stray = LaurentPoly::monomial(NVARS, vec![9, 9, 9], BigInt::from(1));
        prop_assert!((&(&a * &b) + &stray).div_exact(&b).is_err());
    }

    #[test]
    fn rational_functions_normalize(a in laurent(3), b in nonzero_laurent(3), c in nonzero_laurent(3)) {
        let r = RationalFunc::new(a.clone(), b.clone()).unwrap();
        let scaled = RationalFunc::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&r, &scaled);
        if !a.is_zero() {
            prop_assert_eq!(r.checked_mul(&r.inv().unwrap()).unwrap(), RationalFunc::one(NVARS));
        }
    }
}
