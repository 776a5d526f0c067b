//! Exact integer polynomials, truncated power series and product forms.

mod multi_index;
mod polynomial;
mod product;
mod truncated;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use multi_index::{ExtInt, MultiIndex};
pub use polynomial::IntPolynomial;
pub use product::{expand_product_form, ProductForm};
pub use truncated::{series_mul, TruncatedSeries};

/// Substitution `t_i := t` for every variable.
pub trait Diagonal {
    fn diagonal(&self) -> Self;
}

/// `specialize_diagonal(obj)` for any object supporting it.
pub fn specialize_diagonal<T: Diagonal>(obj: &T) -> T {
    obj.diagonal()
}

/// `Σ_k binom(c+k−1, k) t^k` for `k ≤ bound`, i.e. `(1 − t)^{−c}`.
pub fn symmetric_power_series(c: i64, bound: i64) -> TruncatedSeries {
    assert!(bound >= 0, "bound must be nonnegative");
    let mut coeff = BigInt::from(1);
    let mut terms = Vec::with_capacity(bound as usize + 1);
    for k in 0..=bound {
        if k > 0 {
            // binom(c+k−1, k) = binom(c+k−2, k−1) · (c+k−1) / k, exact.
            coeff = coeff * BigInt::from(c + k - 1) / BigInt::from(k);
        }
        terms.push((MultiIndex::finite(&[k]), coeff.clone()));
    }
    TruncatedSeries::from_terms(vec![bound], terms)
}

/// Canonical text: terms in lexicographic exponent order, `c*t1^a*t2^b`.
pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (&'a MultiIndex, &'a BigInt)>) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mono: Vec<String> = e
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != ExtInt::Finite(0))
            .map(|(i, x)| format!("t{}^{}", i + 1, x))
            .collect();
        let body = if mono.is_empty() { c.abs().to_string() } else { format!("{}*{}", c.abs(), mono.join("*")) };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
