mod common;

use proptest::prelude::*;
use singcurve_core::graph::{
    acampo_zeta, alexander_polynomial, blowup_arrow_point, blowup_edge, blowup_free_point, check_multiplicities,
    euler_smooth_parts, graph_from_char_exponents, multivariable_product, solve_multiplicities, Alexander, DualGraph,
};
use singcurve_core::linalg::is_negative_definite;
use singcurve_core::semigroup::{branch_data_from_char_exponents, poincare_closed_form, CharExponents};
use singcurve_core::{specialize_diagonal, FixtureBundle};

fn corpus_graphs() -> Vec<DualGraph> {
    let mut out = Vec::new();
    for name in ["curve_node", "curve_tacnode", "curve_cusp_line", "curve_three_lines", "curve_cusp", "curve_smooth"] {
        let f = FixtureBundle::load(&common::fixtures_dir().join(format!("{name}.json"))).unwrap();
        out.push(f.dual_graph().unwrap().unwrap());
    }
    for beta in [vec![4, 6, 7], vec![3, 5]] {
        out.push(graph_from_char_exponents(&CharExponents::new(beta).unwrap()).unwrap());
    }
    out
}

fn apply(g: &DualGraph, step: (u8, usize)) -> DualGraph {
    let (kind, idx) = step;
    match kind % 3 {
        0 => {
            let v = &g.vertices()[idx % g.vertices().len()];
            blowup_free_point(g, v.id).unwrap()
        }
        1 if !g.edges().is_empty() => blowup_edge(g, g.edges()[idx % g.edges().len()]).unwrap(),
        _ if g.r() > 0 => blowup_arrow_point(g, 1 + idx % g.r()).unwrap(),
        _ => blowup_free_point(g, g.vertices()[0].id).unwrap(),
    }
}

fn certificates(g: &DualGraph) {
    let table = solve_multiplicities(g).unwrap();
    check_multiplicities(g, &table).unwrap();
    assert!(table.per_vertex.iter().flatten().all(|&m| m > 0));
    assert!(is_negative_definite(&g.intersection_matrix()));
    assert_eq!(euler_smooth_parts(g).iter().sum::<i64>(), 2 - g.r() as i64);
}

#[test]
fn corpus_graphs_pass_certificates() {
    for g in corpus_graphs() {
        certificates(&g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blowups_preserve_invariants(
        which in 0usize..8,
        steps in prop::collection::vec((0u8..3, 0usize..16), 1..=5),
    ) {
        let base = corpus_graphs().swap_remove(which);
        let zeta = acampo_zeta(&base).unwrap().expand(&[40]).unwrap();
        let alex = alexander_polynomial(&base).unwrap();
        let mut g = base;
        for s in steps {
            g = apply(&g, s);
            certificates(&g);
        }
        prop_assert_eq!(acampo_zeta(&g).unwrap().expand(&[40]).unwrap(), zeta);
        let after = alexander_polynomial(&g).unwrap();
        match (&alex, &after) {
            (Alexander::Polynomial(a), Alexander::Polynomial(b)) => prop_assert_eq!(a, b),
            (Alexander::Rational(a), Alexander::Rational(b)) => {
                prop_assert_eq!(a.expand(&[40]).unwrap(), b.expand(&[40]).unwrap())
            }
            _ => prop_assert!(false, "shape of the Alexander invariant changed"),
        }
    }

    #[test]
    fn diagonal_of_product_is_zeta(which in 0usize..8) {
        let g = corpus_graphs().swap_remove(which);
        let diag = specialize_diagonal(&multivariable_product(&g).unwrap());
        prop_assert_eq!(diag.expand(&[60]).unwrap(), acampo_zeta(&g).unwrap().expand(&[60]).unwrap());
    }

    #[test]
    fn synthesized_graphs_match_semigroups(n in 2u64..6, k in 1u64..8) {
        let b1 = n + k;
        prop_assume!(num_integer::gcd(n, b1) == 1);
        let ce = CharExponents::new(vec![n, b1]).unwrap();
        let g = graph_from_char_exponents(&ce).unwrap();
        certificates(&g);
        let closed = poincare_closed_form(&branch_data_from_char_exponents(&ce).unwrap());
        prop_assert_eq!(acampo_zeta(&g).unwrap().expand(&[60]).unwrap(), closed.expand(&[60]).unwrap());
    }
}

#[test]
fn known_alexander_polynomials() {
    let graphs = corpus_graphs();
    let text = |g: &DualGraph| alexander_polynomial(g).unwrap().polynomial().map(|p| p.to_string());
    assert_eq!(text(&graphs[0]).as_deref(), Some("1"));
    assert_eq!(text(&graphs[1]).as_deref(), Some("1 + 1*t1^1*t2^1"));
    assert_eq!(text(&graphs[2]).as_deref(), Some("1 + 1*t1^3*t2^1"));
    assert_eq!(text(&graphs[3]).as_deref(), Some("1 - 1*t1^1*t2^1*t3^1"));
}
