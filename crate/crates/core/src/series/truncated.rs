use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::multi_index::MultiIndex;
use super::polynomial::IntPolynomial;
use super::{format_terms, Diagonal};
use crate::error::{Error, Result};

/// A power series in `r` variables known exactly on the box `0 ≤ v ≤ window`.
///
/// Absent keys are zero coefficients and every stored key lies in the box.
/// Monomials with an infinite exponent are `t^∞ = 0` and are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    window: Vec<i64>,
    coeffs: BTreeMap<MultiIndex, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(window: Vec<i64>) -> Self {
        assert!(!window.is_empty(), "series needs at least one variable");
        assert!(window.iter().all(|&b| b >= 0), "window bounds must be nonnegative");
        TruncatedSeries { window, coeffs: BTreeMap::new() }
    }

    pub fn one(window: Vec<i64>) -> Self {
        let r = window.len();
        Self::from_terms(window, [(MultiIndex::zero(r), BigInt::one())])
    }

    /// Collects terms, summing duplicates and dropping anything outside the
    /// window (including infinite exponents).
    pub fn from_terms<I>(window: Vec<i64>, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, BigInt)>,
    {
        let mut s = Self::zero(window);
        for (e, c) in terms {
            s.add_to(&e, c);
        }
        s
    }

    fn in_window(&self, e: &MultiIndex) -> bool {
        e.arity() == self.window.len()
            && match e.to_finite() {
                Some(v) => v.iter().zip(&self.window).all(|(&x, &b)| 0 <= x && x <= b),
                None => false,
            }
    }

    /// Adds `c` to the coefficient at `e`; silently ignores out-of-window keys.
    pub fn add_to(&mut self, e: &MultiIndex, c: BigInt) {
        if c.is_zero() || !self.in_window(e) {
            return;
        }
        let slot = self.coeffs.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(e);
        }
    }

    pub fn arity(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, e: &MultiIndex) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff_at(&self, e: &[i64]) -> BigInt {
        self.coeff(&MultiIndex::finite(e))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Restrict to a smaller box.
    pub fn restrict(&self, window: &[i64]) -> Result<TruncatedSeries> {
        self.check_sub_window(window)?;
        Ok(Self::from_terms(window.to_vec(), self.coeffs.iter().map(|(e, c)| (e.clone(), c.clone()))))
    }

    fn check_sub_window(&self, window: &[i64]) -> Result<()> {
        if window.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), found: window.len() });
        }
        if window.iter().zip(&self.window).any(|(w, b)| w > b) {
            return Err(Error::Input(format!("window {window:?} exceeds the known window {:?}", self.window)));
        }
        Ok(())
    }

    /// Componentwise minimum of the two windows.
    pub fn common_window(&self, other: &TruncatedSeries) -> Result<Vec<i64>> {
        if other.arity() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), found: other.arity() });
        }
        Ok(self.window.iter().zip(&other.window).map(|(a, b)| *a.min(b)).collect())
    }

    /// The lexicographically first exponent in the common window where the
    /// two series differ, or `None` when they agree there.
    pub fn first_discrepancy(&self, other: &TruncatedSeries) -> Result<Option<MultiIndex>> {
        let w = self.common_window(other)?;
        let a = self.restrict(&w)?;
        let b = other.restrict(&w)?;
        let keys: std::collections::BTreeSet<&MultiIndex> = a.coeffs.keys().chain(b.coeffs.keys()).collect();
        let first = keys.into_iter().find(|k| a.coeff(k) != b.coeff(k)).cloned();
        Ok(first)
    }

    /// Exact coefficientwise equality on the common window.
    pub fn agrees_with(&self, other: &TruncatedSeries) -> Result<bool> {
        Ok(self.first_discrepancy(other)?.is_none())
    }

    /// Convolution truncated to `window`, which must lie inside both operand
    /// windows.
    pub fn mul_to(&self, other: &TruncatedSeries, window: &[i64]) -> Result<TruncatedSeries> {
        if other.arity() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), found: other.arity() });
        }
        self.check_sub_window(window)?;
        other.check_sub_window(window)?;
        let mut out = TruncatedSeries::zero(window.to_vec());
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.add_to(&(ea + eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let w = self.common_window(other)?;
        let mut out = self.restrict(&w)?;
        for (e, c) in &other.coeffs {
            out.add_to(e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let w = self.common_window(other)?;
        let mut out = self.restrict(&w)?;
        for (e, c) in &other.coeffs {
            out.add_to(e, -c);
        }
        Ok(out)
    }

    /// The stored terms as a polynomial (the truncation itself).
    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_terms(self.arity(), self.coeffs.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    /// Stored exponents lying on an outer face `v_i = window_i`.
    pub fn boundary_support(&self) -> Vec<MultiIndex> {
        self.coeffs.keys().filter(|e| e.values().iter().zip(&self.window).any(|(x, b)| x == b)).cloned().collect()
    }
}

impl Diagonal for TruncatedSeries {
    /// `t_i := t`. A box window `B` determines the diagonal up to degree
    /// `min_i B_i`, which becomes the new window.
    fn diagonal(&self) -> TruncatedSeries {
        let bound = *self.window.iter().min().expect("nonempty window");
        TruncatedSeries::from_terms(
            vec![bound],
            self.coeffs.iter().map(|(e, c)| {
                let n = e.norm().finite().expect("finite key");
                (MultiIndex::finite(&[n]), c.clone())
            }),
        )
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.coeffs.iter()))?;
        write!(f, " + O(t^{})", MultiIndex::finite(&self.window))
    }
}

/// Truncated product; see [`TruncatedSeries::mul_to`].
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries, window: &[i64]) -> Result<TruncatedSeries> {
    a.mul_to(b, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1(window: i64, coeffs: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            vec![window],
            coeffs.iter().map(|&(e, c)| (MultiIndex::finite(&[e]), BigInt::from(c))),
        )
    }

    #[test]
    fn difference_of_squares() {
        let a = s1(5, &[(0, 1), (1, 1)]);
        let b = s1(5, &[(0, 1), (1, -1)]);
        assert_eq!(series_mul(&a, &b, &[5]).unwrap(), s1(5, &[(0, 1), (2, -1)]));
    }

    #[test]
    fn identity_multiplication() {
        let a = s1(6, &[(0, 3), (2, -1), (5, 7)]);
        let one = TruncatedSeries::one(vec![6]);
        assert_eq!(series_mul(&a, &one, &[6]).unwrap(), a);
    }

    #[test]
    fn geometric_prefix_times_one_minus_t() {
        // Hand convolution: (1 + t + ... + t^10)(1 - t) = 1 - t^11.
        let a = s1(10, &(0..=10).map(|k| (k, 1)).collect::<Vec<_>>());
        let b = s1(10, &[(0, 1), (1, -1)]);
        assert_eq!(series_mul(&a, &b, &[9]).unwrap(), TruncatedSeries::one(vec![9]));
    }

    #[test]
    fn arity_mismatch() {
        let a = TruncatedSeries::one(vec![3]);
        let b = TruncatedSeries::one(vec![3, 3]);
        assert!(matches!(series_mul(&a, &b, &[3]), Err(Error::Arity { .. })));
    }

    #[test]
    fn window_too_large_is_rejected() {
        let a = TruncatedSeries::one(vec![3]);
        assert!(series_mul(&a, &a, &[4]).is_err());
    }

    #[test]
    fn infinite_monomials_vanish() {
        let mut s = TruncatedSeries::zero(vec![4, 4]);
        s.add_to(
            &MultiIndex::new(vec![
                super::super::multi_index::ExtInt::Finite(1),
                super::super::multi_index::ExtInt::Infinity,
            ]),
            BigInt::one(),
        );
        assert!(s.is_zero());
    }

    #[test]
    fn diagonal_window_is_min_bound() {
        let s = TruncatedSeries::from_terms(
            vec![3, 5],
            [(MultiIndex::finite(&[1, 1]), BigInt::one()), (MultiIndex::finite(&[0, 0]), BigInt::one())],
        );
        let d = s.diagonal();
        assert_eq!(d.window(), &[3]);
        assert_eq!(d, s1(3, &[(0, 1), (2, 1)]));
    }

    #[test]
    fn text_form() {
        assert_eq!(s1(4, &[(0, 1), (2, -1)]).to_string(), "1 - 1*t1^2 + O(t^[4])");
    }
}
