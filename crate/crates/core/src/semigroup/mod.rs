//! Numerical semigroups: semigroups of values of plane branches and
//! semigroups of pole orders at infinity.

mod branch;
mod infinity;
mod numerical;

pub use branch::{
    branch_data_from_char_exponents, poincare_closed_form, representations, unique_representation, BranchSemigroupData,
    CharExponents,
};
pub use infinity::{poincare_at_infinity, InfinityPoincare, SemigroupAtInfinity};
pub use numerical::{enumerate_semigroup, membership, SemigroupEnumeration};
