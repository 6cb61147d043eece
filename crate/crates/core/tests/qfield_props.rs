use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qhaar::algebra::{length_of, permutations};
use qhaar::qfield::{parse_rational, q2_factorial, q2_int, q_binom_and_factorial, IntPoly, RationalFunction, ZPoly};

fn laurent() -> impl Strategy<Value = IntPoly> {
    (-3i32..3, prop::collection::vec(-4i64..=4, 0..5))
        .prop_map(|(low, cs)| IntPoly::from_coeffs(low, cs.into_iter().map(BigInt::from).collect()))
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| {
        RationalFunction::from_laurent_ratio(&n, &d).ok()
    })
}

fn r(s: &str) -> RationalFunction {
    parse_rational(s).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #[test]
    fn addition_is_associative(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    }

    #[test]
    fn multiplication_distributes(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn nonzero_elements_invert(x in ratfunc()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.recip().unwrap()).is_one());
    }

    #[test]
    fn canonical_text_reparses(x in ratfunc()) {
        let again = parse_rational(&x.to_string()).unwrap();
        prop_assert_eq!(&again, &x);
        prop_assert_eq!(again.to_string(), x.to_string());
    }

    #[test]
    fn denominators_are_normalized(x in ratfunc()) {
        let lead = x.denom().leading().unwrap().clone();
        prop_assert!(lead > BigInt::from(0));
        prop_assert!(x.numer().gcd_primitive(x.denom()).degree() == Some(0) || x.is_zero());
    }

    #[test]
    fn evaluation_is_multiplicative(x in ratfunc(), y in ratfunc(), n in -5i64..=5, d in 1i64..=4) {
        let q0 = rat(n, d);
        if let (Ok(a), Ok(b)) = (x.eval_at(&q0), y.eval_at(&q0)) {
            prop_assert_eq!((&x * &y).eval_at(&q0).unwrap(), a * b);
        }
    }
}

#[test]
fn field_examples() {
    assert_eq!(&r("q - q^-1") + &r("q^-1"), r("q"));
    assert_eq!(r("(q^2-1)/(q-1)"), r("q+1"));
    assert_eq!(r("(1-q^6)/(1-q^2)"), r("1+q^2+q^4"));
    assert!(r("1").checked_div(&RationalFunction::zero()).is_err());
}

#[test]
fn evaluation_examples() {
    assert_eq!(r("1/(1+q^2)").eval_at(&rat(1, 1)).unwrap(), rat(1, 2));
    assert_eq!(r("q^2/((q^2+1)^2*(q^4+1))").eval_at(&rat(1, 1)).unwrap(), rat(1, 8));
    assert_eq!(r("(q^4-q^2+1)/((q^4+1)*(q^4+q^2+1))").eval_at(&rat(1, 1)).unwrap(), rat(1, 6));
    assert!(r("1/(q-1)").eval_at(&rat(1, 1)).is_err());
}

#[test]
fn q_factorials() {
    assert!(q2_factorial(1).is_one());
    assert_eq!(q2_factorial(2), ZPoly::from_i64s(&[1, 0, 1]));
    assert_eq!(q2_factorial(3), &ZPoly::from_i64s(&[1, 0, 1]) * &ZPoly::from_i64s(&[1, 0, 1, 0, 1]));
    assert_eq!(q2_int(3), ZPoly::from_i64s(&[1, 0, 1, 0, 1]));
    let (int, fact, binom) = q_binom_and_factorial(4, 2);
    assert_eq!(int, RationalFunction::from_poly(q2_int(4)));
    assert_eq!(fact, RationalFunction::from_poly(q2_factorial(4)));
    assert_eq!(binom, BigInt::from(6));
}

#[test]
fn inversion_generating_function() {
    for n in 2..=4 {
        let mut sum = IntPoly::zero();
        for p in permutations(n) {
            sum += &IntPoly::q_pow(2 * length_of(&p) as i32);
        }
        assert_eq!(RationalFunction::from(&sum), RationalFunction::from_poly(q2_factorial(n as u32)), "n = {n}");
    }
}
