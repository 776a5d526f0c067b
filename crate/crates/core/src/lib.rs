//! Invariants of plane curve singularities computed along three independent
//! routes (semigroups of values, embedded resolution graphs, and jet spaces
//! along parameterized branches), with exact comparison of the results.

pub mod error;
pub mod fixture;
pub mod graph;
pub mod jets;
pub mod linalg;
pub mod poincare;
pub mod semigroup;
pub mod series;

pub use error::{Error, Result};
pub use fixture::FixtureBundle;
pub use graph::{acampo_zeta, alexander_polynomial, solve_multiplicities, Alexander, DualGraph, MultiplicityTable};
pub use jets::{BranchParam, CurveModel, Germ, JetConfig, JetEngine, Valuation};
pub use poincare::{
    build_laurent_window, euler_integral, p_prime, poincare_from_jets, verify_curve, x_series, IntegralMode,
    LaurentWindow, PoincareSeries, VerifyOptions, VerifyReport,
};
pub use semigroup::{
    branch_data_from_char_exponents, enumerate_semigroup, poincare_at_infinity, poincare_closed_form,
    BranchSemigroupData, CharExponents, SemigroupAtInfinity,
};
pub use series::{
    expand_product_form, series_mul, specialize_diagonal, symmetric_power_series, Diagonal, ExtInt, IntPolynomial,
    MultiIndex, ProductForm, TruncatedSeries,
};
