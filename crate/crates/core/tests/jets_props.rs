mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use singcurve_core::jets::{jet_determinacy_check, CurveModel, Germ, JetConfig, JetEngine, Valuation};

fn germ() -> impl Strategy<Value = Germ> {
    prop::collection::vec(((0u32..4, 0u32..4), -4i64..5), 1..4).prop_map(|terms| {
        Germ::from_terms(
            terms
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|((a, b), c)| ((a, b), BigRational::from_integer(BigInt::from(c)))),
        )
    })
}

fn curves() -> Vec<CurveModel> {
    vec![
        common::node(),
        common::tacnode(),
        common::cusp_and_line(),
        common::three_lines(),
        common::curve(&[(&[(2, 1)], &[(3, 1)])]),
        common::curve(&[(&[(3, 1)], &[(5, 1)])]),
        common::curve(&[(&[(4, 1)], &[(6, 1), (7, 1)])]),
    ]
}

/// `(curve index, semigroup generators)` for the one-branch models above.
const BRANCHES: [(usize, &[u64]); 3] = [(4, &[2, 3]), (5, &[3, 5]), (6, &[4, 6, 13])];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuations_are_additive(which in 0usize..7, g in germ(), h in germ()) {
        // Products reach order 2·(3 + 3)·7; the default truncation would
        // rightly refuse them.
        let c = &curves()[which].with_trunc(256);
        let (vg, vh, vgh) = (c.valuations(&g).unwrap(), c.valuations(&h).unwrap(), c.valuations(&g.mul(&h)).unwrap());
        for i in 0..c.r() {
            match (&vg[i], &vh[i], &vgh[i]) {
                (Valuation::Finite { order: a, leading: la }, Valuation::Finite { order: b, leading: lb },
                 Valuation::Finite { order: s, leading: ls }) => {
                    prop_assert_eq!(*s, a + b);
                    prop_assert_eq!(ls, &(la * lb));
                }
                (_, _, Valuation::Infinite) => {
                    prop_assert!(vg[i] == Valuation::Infinite || vh[i] == Valuation::Infinite);
                }
                _ => prop_assert!(false, "finite times finite must be finite"),
            }
        }
    }

    #[test]
    fn single_branch_c_is_membership(k in 0usize..3, v in -3i64..30) {
        let (idx, gens) = BRANCHES[k];
        let c = &curves()[idx];
        let mut e = JetEngine::new(c, JetConfig::default());
        let member = v >= 0 && common::members(gens, v as u64)[v as usize];
        prop_assert_eq!(e.c_of_v(&[v], None).unwrap(), usize::from(member));
        if v >= 0 {
            prop_assert_eq!(e.fiber_report(&[v], None).unwrap().chi_pf, i64::from(member));
        }
    }

    #[test]
    fn subspace_dims_are_monotone(which in 0usize..4, v in prop::collection::vec(0i64..5, 3), i in 0usize..3, n in 1usize..8) {
        let c = &curves()[which];
        let r = c.r();
        let v = &v[..r];
        let i = i % r;
        let mut e = JetEngine::new(c, JetConfig::default());
        let base = e.jet_subspace_dim(v, n).unwrap();
        let mut up = v.to_vec();
        up[i] += 1;
        prop_assert!(e.jet_subspace_dim(&up, n).unwrap() <= base);
        prop_assert!(e.jet_subspace_dim(v, n + 1).unwrap() >= base);
    }

    #[test]
    fn fiber_dims_shrink_with_more_conditions(which in 0usize..4, v in prop::collection::vec(0i64..4, 3)) {
        let c = &curves()[which];
        let v = &v[..c.r()];
        let f = JetEngine::new(c, JetConfig::default()).fiber_report(v, None).unwrap();
        for (s, d) in &f.dims {
            for (t, e) in &f.dims {
                if s.iter().all(|x| t.contains(x)) {
                    prop_assert!(e <= d);
                }
            }
        }
        prop_assert_eq!(Some(f.cv), f.dim(&[]));
    }

    #[test]
    fn high_order_perturbations_do_not_move_valuations(which in 0usize..7, g in germ(), seed in any::<u64>()) {
        let c = &curves()[which];
        let vals = c.valuations(&g).unwrap();
        prop_assume!(vals.iter().any(|v| v.order().is_some()));
        let mut rng = StdRng::seed_from_u64(seed);
        prop_assert!(jet_determinacy_check(c, &g, 10, &mut rng).unwrap().passed());
    }
}

#[test]
fn node_and_tacnode_values() {
    let node = common::node();
    let mut e = JetEngine::new(&node, JetConfig::default());
    // For two transversal lines, c(v) counts the free leading coefficients.
    for (v, c) in [([0, 0], 1), ([1, 1], 2), ([3, 0], 1), ([-1, 4], 1), ([-1, -1], 0)] {
        assert_eq!(e.c_of_v(&v, None).unwrap(), c, "v = {v:?}");
    }
    let tac = common::tacnode();
    let mut e = JetEngine::new(&tac, JetConfig::default());
    assert_eq!(e.c_of_v(&[1, 1], None).unwrap(), 1);
    assert_eq!(e.c_of_v(&[2, 2], None).unwrap(), 2);
    assert_eq!(e.c_of_v(&[2, 1], None).unwrap(), 1);
}
