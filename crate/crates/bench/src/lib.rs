//! Inputs shared by the benchmarks.

use singcurve_core::jets::{rat, BranchParam, CurveModel, DEFAULT_TRUNC};
use singcurve_core::CharExponents;

pub fn char_exponents(beta: &[u64]) -> CharExponents {
    CharExponents::new(beta.to_vec()).expect("valid exponents")
}

/// `(exponent, coefficient)` pairs of one coordinate.
pub type Terms<'a> = &'a [(usize, i64)];

/// A curve from `(x terms, y terms)` pairs with integer coefficients.
pub fn curve(branches: &[(Terms, Terms)]) -> CurveModel {
    let conv = |t: Terms| t.iter().map(|&(e, c)| (e, rat(c))).collect::<Vec<_>>();
    CurveModel::new(
        branches
            .iter()
            .map(|(x, y)| BranchParam::new(&conv(x), &conv(y), DEFAULT_TRUNC).expect("valid branch"))
            .collect(),
    )
    .expect("distinct branches")
}

pub fn tacnode() -> CurveModel {
    curve(&[(&[(1, 1)], &[(2, 1)]), (&[(1, 1)], &[(2, -1)])])
}

pub fn cusp_and_line() -> CurveModel {
    curve(&[(&[(2, 1)], &[(3, 1)]), (&[], &[(1, 1)])])
}
