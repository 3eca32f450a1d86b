use num::{One, Zero};
use orthoscheme_core::rational::{format_rational, parse_rational, ratio, Rational};
use orthoscheme_core::series::{r_polynomial, TPoly};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = TPoly> {
    prop::collection::vec((-20i64..20, 1i64..6), 0..6)
        .prop_map(|cs| TPoly::from_coeffs(cs.into_iter().map(|(p, q)| ratio(p, q)).collect()))
}

proptest! {
    #[test]
    fn rational_string_roundtrip(p in -1_000_000i64..1_000_000, q in 1i64..10_000) {
        let x = ratio(p, q);
        let s = format_rational(&x);
        prop_assert_eq!(parse_rational(&s).unwrap(), x.clone());
        // canonical form: no common factor, positive denominator
        prop_assert!(num::Integer::gcd(x.numer(), x.denom()).is_one());
        prop_assert!(*x.denom() > num::BigInt::zero());
    }

    #[test]
    fn tpoly_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            prop_assert_eq!((&a * &b).degree(), Some(da + db));
        }
    }

    #[test]
    fn r_invariant_under_permutation(mut ns in prop::collection::vec(0usize..4, 1..4), j in 0usize..4, d in 0i64..3) {
        let d = ratio(d, 2);
        let n: usize = ns.iter().sum();
        prop_assume!(j <= n);
        let a = r_polynomial(&d, j, &ns).unwrap();
        ns.reverse();
        prop_assert_eq!(r_polynomial(&d, j, &ns).unwrap(), a);
    }
}

#[test]
fn parse_rejects_garbage() {
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
    assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
    assert_eq!(format_rational(&Rational::from_integer(7.into())), "7");
}
