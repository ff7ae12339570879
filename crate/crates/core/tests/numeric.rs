use num_bigint::BigInt;
use num_rational::BigRational;
use pathforge::numeric::{binomial, catalan, narayana, narayana_poly, ratio, GammaPoly};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = GammaPoly> {
    prop::collection::vec(-50i64..50, 0..6).prop_map(|c| GammaPoly::from_i64s(&c))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, GammaPoly::zero());
        prop_assert_eq!(&a * &GammaPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), num in -7i64..7, den in 1i64..7) {
        let g = ratio(num, den);
        prop_assert_eq!((&a * &b).eval(&g), a.eval(&g) * b.eval(&g));
        prop_assert_eq!((&a + &b).eval(&g), a.eval(&g) + b.eval(&g));
        prop_assert_eq!(a.shift(2).eval(&g), a.eval(&g) * &g * &g);
    }

    #[test]
    fn json_round_trip(a in poly()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<GammaPoly>(&text).unwrap(), a);
    }
}

/// Catalan numbers from the convolution recurrence.
#[test]
fn catalan_matches_recurrence() {
    let mut c = vec![BigInt::from(1)];
    for k in 1..=40usize {
        let next: BigInt = (0..k).map(|j| &c[j] * &c[k - 1 - j]).sum();
        c.push(next);
    }
    for (k, v) in c.iter().enumerate() {
        assert_eq!(&catalan(k as u64), v, "k={k}");
    }
}

#[test]
fn narayana_rows_sum_to_catalan() {
    for k in 1..=20u64 {
        let row: BigInt = (0..k).map(|r| narayana(k, r).unwrap()).sum();
        assert_eq!(row, catalan(k));
        assert_eq!(narayana_poly(k).eval(&BigRational::from_integer(1.into())), ratio(catalan(k), 1));
        assert_eq!(narayana_poly(k).degree(), Some(k as usize - 1));
    }
    assert_eq!(binomial(10, 3), BigInt::from(120));
    assert_eq!(binomial(3, 5), BigInt::from(0));
}
