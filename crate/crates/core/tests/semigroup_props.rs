mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use singcurve_core::semigroup::{
    branch_data_from_char_exponents, enumerate_semigroup, poincare_at_infinity, poincare_closed_form, representations,
    unique_representation, CharExponents, SemigroupAtInfinity,
};
use singcurve_core::Error;

/// Valid characteristic exponents with one or two Puiseux pairs.
fn char_exponents() -> impl Strategy<Value = Vec<u64>> {
    prop_oneof![
        (2u64..7, 1u64..12).prop_filter_map("coprime", |(n, k)| {
            let b1 = n + k;
            (num_integer::gcd(n, b1) == 1).then(|| vec![n, b1])
        }),
        (2u64..4, 2u64..4, 1u64..5, 1u64..6).prop_filter_map("two pairs", |(a, b, k1, k2)| {
            // β0 = a·b, β1 = b·(a + k1) with gcd(a, a + k1) = 1, β2 odd w.r.t. b.
            let beta0 = a * b;
            let beta1 = b * (a + k1);
            let beta2 = beta1 + k2;
            let ok = num_integer::gcd(a, a + k1) == 1 && num_integer::gcd(b, k2) == 1 && b > 1;
            ok.then(|| vec![beta0, beta1, beta2])
        }),
    ]
}

fn generators() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..15, 1..4)
}

proptest! {
    #[test]
    fn enumeration_matches_oracle(gens in generators(), bound in 0u64..80) {
        match enumerate_semigroup(&gens, bound) {
            Ok(e) => {
                let m = common::members(&gens, bound);
                let expected: Vec<u64> = (0..=bound).filter(|&v| m[v as usize]).collect();
                prop_assert_eq!(&e.elements, &expected);
                if let Some(c) = common::conductor(&gens, 400) {
                    prop_assert_eq!(e.conductor, c);
                }
            }
            Err(Error::NotCofinite(_)) => {
                let g = gens.iter().fold(0, |a, &b| num_integer::gcd(a, b));
                prop_assert!(g > 1);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn closure_and_conductor(gens in generators()) {
        prop_assume!(gens.iter().fold(0, |a, &b| num_integer::gcd(a, b)) == 1);
        let e = enumerate_semigroup(&gens, 120).unwrap();
        for &a in &e.elements {
            for &b in &e.elements {
                if a + b <= 120 {
                    prop_assert!(e.contains(a + b));
                }
            }
        }
        let c = e.conductor;
        prop_assert!(c == 0 || !e.contains(c - 1));
        prop_assert!((c..=c + 30).all(|v| e.contains(v)));
    }

    #[test]
    fn branch_semigroups_are_symmetric(beta in char_exponents()) {
        let ce = CharExponents::new(beta.clone()).unwrap();
        let d = branch_data_from_char_exponents(&ce).unwrap();
        prop_assert_eq!(&d.gens, &common::generators(&beta));
        prop_assert!(d.is_symmetric());
        // Conductor of a plane branch: Σ_j (n_j − 1) β̄_j − β̄_0 + 1, where the
        // stored `n` already holds n_j − 1.
        let sum: i64 = d.n.iter().zip(&d.gens[1..]).map(|(&n, &g)| (n as i64) * g as i64).sum();
        let from_formula = sum - d.gens[0] as i64 + 1;
        prop_assert_eq!(d.conductor as i64, from_formula);
    }

    #[test]
    fn representations_round_trip(beta in char_exponents(), v in 0u64..200) {
        let d = branch_data_from_char_exponents(&CharExponents::new(beta).unwrap()).unwrap();
        let reps = representations(v, &d);
        prop_assert!(reps.len() <= 1);
        prop_assert_eq!(reps.len() == 1, d.contains(v));
        if let Some(k) = unique_representation(v, &d) {
            let total: u64 = k.iter().zip(&d.gens).map(|(a, b)| a * b).sum();
            prop_assert_eq!(total, v);
        }
    }

    #[test]
    fn closed_form_is_the_semigroup_series(beta in char_exponents()) {
        let d = branch_data_from_char_exponents(&CharExponents::new(beta).unwrap()).unwrap();
        let s = poincare_closed_form(&d).expand(&[80]).unwrap();
        let m = common::members(&d.gens, 80);
        for v in 0..=80i64 {
            prop_assert_eq!(s.coeff_at(&[v]), BigInt::from(u8::from(m[v as usize])));
        }
    }

    #[test]
    fn infinity_forms_agree(gens in generators(), bound in 1i64..60) {
        prop_assume!(gens.iter().fold(0, |a, &b| num_integer::gcd(a, b)) == 1);
        let gamma = SemigroupAtInfinity::new(gens).unwrap();
        let p = poincare_at_infinity(&gamma, bound).unwrap();
        prop_assert_eq!(&p.rational_series(bound).unwrap(), &p.series);
        if let Some(pf) = &p.product {
            prop_assert_eq!(&pf.expand(&[bound]).unwrap(), &p.series);
        }
    }
}

#[test]
fn invalid_exponents_are_rejected() {
    assert!(CharExponents::new(vec![]).is_err());
    assert!(CharExponents::new(vec![4, 6]).is_err());
    assert!(CharExponents::new(vec![4, 2, 7]).is_err());
    assert!(CharExponents::new(vec![2, 3, 5]).is_err());
}
