use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::multi_index::MultiIndex;
use super::polynomial::IntPolynomial;
use super::truncated::TruncatedSeries;
use super::Diagonal;
use crate::error::{Error, Result};

/// A formal product `c · t^p · ∏_k (1 − t^{m_k})^{e_k}`.
///
/// Factors are kept sorted by `m`, with equal `m` merged and zero exponents
/// dropped. Two product forms are compared only through their expansions:
/// different resolutions give different factor lists for the same function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductForm {
    r: usize,
    coef: BigInt,
    prefactor: MultiIndex,
    factors: Vec<(MultiIndex, i64)>,
}

impl ProductForm {
    /// The constant 1 in `r` variables.
    pub fn one(r: usize) -> Self {
        ProductForm { r, coef: BigInt::one(), prefactor: MultiIndex::zero(r), factors: Vec::new() }
    }

    pub fn with_prefactor(coef: BigInt, prefactor: MultiIndex) -> Self {
        ProductForm { r: prefactor.arity(), coef, prefactor, factors: Vec::new() }
    }

    /// Builds `∏ (1 − t^m)^e` from a factor list.
    pub fn from_factors<I>(r: usize, factors: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, i64)>,
    {
        let mut pf = ProductForm::one(r);
        for (m, e) in factors {
            pf.push(m, e);
        }
        pf
    }

    /// Multiplies in `(1 − t^m)^e`, merging with an existing factor.
    pub fn push(&mut self, m: MultiIndex, e: i64) {
        assert_eq!(m.arity(), self.r, "factor arity mismatch");
        if e == 0 {
            return;
        }
        match self.factors.binary_search_by(|(k, _)| k.cmp(&m)) {
            Ok(i) => {
                self.factors[i].1 += e;
                if self.factors[i].1 == 0 {
                    self.factors.remove(i);
                }
            }
            Err(i) => self.factors.insert(i, (m, e)),
        }
    }

    pub fn arity(&self) -> usize {
        self.r
    }

    pub fn coef(&self) -> &BigInt {
        &self.coef
    }

    pub fn prefactor(&self) -> &MultiIndex {
        &self.prefactor
    }

    pub fn factors(&self) -> &[(MultiIndex, i64)] {
        &self.factors
    }

    /// The product of two forms (concatenation of factor lists).
    pub fn combine(&self, other: &ProductForm) -> Result<ProductForm> {
        if self.r != other.r {
            return Err(Error::Arity { expected: self.r, found: other.r });
        }
        let mut out = ProductForm::with_prefactor(&self.coef * &other.coef, &self.prefactor + &other.prefactor);
        for (m, e) in self.factors.iter().chain(&other.factors) {
            out.push(m.clone(), *e);
        }
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        for (m, _) in &self.factors {
            if m.is_zero() || !m.is_nonnegative() {
                return Err(Error::DegenerateFactor(m.to_string()));
            }
        }
        Ok(())
    }

    /// Exact expansion on the box `0 ≤ v ≤ window`.
    ///
    /// Positive exponents multiply by `1 − t^m`; negative ones by the
    /// geometric series `Σ t^{km}`, realized as an in-place running sum.
    pub fn expand(&self, window: &[i64]) -> Result<TruncatedSeries> {
        if window.len() != self.r {
            return Err(Error::Arity { expected: self.r, found: window.len() });
        }
        self.validate()?;
        let mut dense = DenseBox::one(window);
        for (m, e) in &self.factors {
            // t^∞ = 0 and exponents beyond the window contribute 1.
            let Some(m) = m.to_finite() else { continue };
            if m.iter().zip(window).any(|(a, b)| a > b) {
                continue;
            }
            for _ in 0..e.unsigned_abs() {
                if *e > 0 {
                    dense.mul_one_minus(&m);
                } else {
                    dense.div_one_minus(&m);
                }
            }
        }
        let base = dense.into_series();
        let shift = match self.prefactor.to_finite() {
            Some(p) => p,
            None => return Ok(TruncatedSeries::zero(window.to_vec())),
        };
        let shift = MultiIndex::finite(&shift);
        Ok(TruncatedSeries::from_terms(
            window.to_vec(),
            base.coeffs().iter().map(|(e, c)| (e + &shift, c * &self.coef)),
        ))
    }

    /// `∏_{e>0} (1 − t^m)^e` times the prefactor, as a polynomial.
    pub fn numerator(&self) -> IntPolynomial {
        let mut p = IntPolynomial::monomial(self.coef.clone(), self.prefactor.clone());
        for (m, e) in &self.factors {
            if *e > 0 {
                for _ in 0..*e {
                    p = &p * &one_minus(m);
                }
            }
        }
        p
    }

    /// `∏_{e<0} (1 − t^m)^{−e}` as a polynomial.
    pub fn denominator(&self) -> IntPolynomial {
        let mut p = IntPolynomial::one(self.r);
        for (m, e) in &self.factors {
            if *e < 0 {
                for _ in 0..(-e) {
                    p = &p * &one_minus(m);
                }
            }
        }
        p
    }

    /// Componentwise `Σ_k e_k m_k` plus the prefactor: the multidegree of the
    /// rational function when it is a polynomial.
    pub fn degree_balance(&self) -> Option<Vec<i64>> {
        let mut d = self.prefactor.to_finite()?;
        for (m, e) in &self.factors {
            let m = m.to_finite()?;
            for (di, mi) in d.iter_mut().zip(m) {
                *di += e * mi;
            }
        }
        Some(d)
    }
}

fn one_minus(m: &MultiIndex) -> IntPolynomial {
    let r = m.arity();
    &IntPolynomial::one(r) - &IntPolynomial::monomial(BigInt::one(), m.clone())
}

impl Diagonal for ProductForm {
    fn diagonal(&self) -> ProductForm {
        let norm = |m: &MultiIndex| MultiIndex::new(vec![m.norm()]);
        let mut out = ProductForm::with_prefactor(self.coef.clone(), norm(&self.prefactor));
        for (m, e) in &self.factors {
            out.push(norm(m), *e);
        }
        out
    }
}

impl fmt::Display for ProductForm {
    /// `[coef, exp] * (1 - t^[m])^e * …`, factors in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.coef, self.prefactor)?;
        for (m, e) in &self.factors {
            write!(f, " * (1 - t^{m})^{e}")?;
        }
        Ok(())
    }
}

/// Row-major dense coefficient array over a box, used for expansion.
struct DenseBox {
    dims: Vec<usize>,
    strides: Vec<usize>,
    data: Vec<BigInt>,
}

impl DenseBox {
    fn one(window: &[i64]) -> Self {
        let dims: Vec<usize> = window.iter().map(|&b| b as usize + 1).collect();
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        let len = dims.iter().product();
        let mut data = vec![BigInt::zero(); len];
        data[0] = BigInt::one();
        DenseBox { dims, strides, data }
    }

    fn coords(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let c = idx / s;
                idx %= s;
                c
            })
            .collect()
    }

    /// Linear offset of `m` if `v - m` stays in the box for coordinate `v`.
    fn back_offset(&self, idx: usize, m: &[i64]) -> Option<usize> {
        let v = self.coords(idx);
        if v.iter().zip(m).all(|(&x, &y)| x as i64 >= y) {
            Some(m.iter().zip(&self.strides).map(|(&y, s)| y as usize * s).sum())
        } else {
            None
        }
    }

    fn mul_one_minus(&mut self, m: &[i64]) {
        // Descending order reads v − m before it is overwritten.
        for idx in (0..self.data.len()).rev() {
            if let Some(off) = self.back_offset(idx, m) {
                let prev = self.data[idx - off].clone();
                if !prev.is_zero() {
                    self.data[idx] -= prev;
                }
            }
        }
    }

    fn div_one_minus(&mut self, m: &[i64]) {
        // Ascending order accumulates the geometric series in place.
        for idx in 0..self.data.len() {
            if let Some(off) = self.back_offset(idx, m) {
                let prev = self.data[idx - off].clone();
                if !prev.is_zero() {
                    self.data[idx] += prev;
                }
            }
        }
    }

    fn into_series(self) -> TruncatedSeries {
        let window: Vec<i64> = self.dims.iter().map(|&d| d as i64 - 1).collect();
        let keys: Vec<MultiIndex> = (0..self.data.len())
            .map(|i| MultiIndex::finite(&self.coords(i).into_iter().map(|c| c as i64).collect::<Vec<_>>()))
            .collect();
        TruncatedSeries::from_terms(window, keys.into_iter().zip(self.data))
    }
}

/// Free-function form of [`ProductForm::expand`].
pub fn expand_product_form(pf: &ProductForm, window: &[i64]) -> Result<TruncatedSeries> {
    pf.expand(window)
}
