use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::multi_index::MultiIndex;
use super::truncated::TruncatedSeries;
use super::{format_terms, Diagonal};
use crate::error::{Error, Result};

/// A Laurent polynomial in `r` variables with integer coefficients.
///
/// Exponents may be negative. The term map never stores a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    r: usize,
    terms: BTreeMap<MultiIndex, BigInt>,
}

impl IntPolynomial {
    pub fn zero(r: usize) -> Self {
        IntPolynomial { r, terms: BTreeMap::new() }
    }

    pub fn one(r: usize) -> Self {
        Self::constant(r, BigInt::one())
    }

    pub fn constant(r: usize, c: BigInt) -> Self {
        Self::monomial(c, MultiIndex::zero(r))
    }

    /// `c · t^exps`. Panics on an infinite exponent; callers drop `t^∞` first.
    pub fn monomial(c: BigInt, exps: MultiIndex) -> Self {
        assert!(exps.is_finite(), "polynomial exponents must be finite");
        let r = exps.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        IntPolynomial { r, terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(r: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, BigInt)>,
    {
        let mut p = IntPolynomial::zero(r);
        for (e, c) in terms {
            assert_eq!(e.arity(), r, "term arity mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from small integer data.
    pub fn from_i64_terms(r: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(r, terms.iter().map(|(e, c)| (MultiIndex::finite(e), BigInt::from(*c))))
    }

    pub(crate) fn add_term(&mut self, e: MultiIndex, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn arity(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, e: &MultiIndex) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^0`, i.e. the value at the origin for a polynomial
    /// without negative exponents.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&MultiIndex::zero(self.r))
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| !e.is_nonnegative())
    }

    /// Componentwise minimum and maximum exponent over the support.
    pub fn exponent_bounds(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?.values();
        let (mut lo, mut hi) = (first.clone(), first);
        for e in it {
            for (i, v) in e.values().into_iter().enumerate() {
                lo[i] = lo[i].min(v);
                hi[i] = hi[i].max(v);
            }
        }
        Some((lo, hi))
    }

    /// Multiply by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.r);
        let s = MultiIndex::finite(shift);
        IntPolynomial { r: self.r, terms: self.terms.iter().map(|(e, c)| (e + &s, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return IntPolynomial::zero(self.r);
        }
        IntPolynomial { r: self.r, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    fn leading(&self) -> Option<(&MultiIndex, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `num / den` in the Laurent polynomial ring.
    ///
    /// Both operands are shifted so that every variable has minimal exponent
    /// zero; after that the quotient, if it exists, is an ordinary polynomial
    /// and lexicographic long division either terminates with remainder zero
    /// or exposes a term that cannot be cancelled.
    pub fn exact_divide(&self, den: &IntPolynomial) -> Result<IntPolynomial> {
        if self.r != den.r {
            return Err(Error::Arity { expected: self.r, found: den.r });
        }
        if den.is_zero() {
            return Err(Error::Input("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(IntPolynomial::zero(self.r));
        }
        let (num_lo, _) = self.exponent_bounds().expect("nonzero");
        let (den_lo, _) = den.exponent_bounds().expect("nonzero");
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shift(&neg(&num_lo));
        let d = den.shift(&neg(&den_lo));
        let (d_lead_e, d_lead_c) = {
            let (e, c) = d.leading().expect("nonzero");
            (e.values(), c.clone())
        };

        let mut quotient = IntPolynomial::zero(self.r);
        while let Some((e, c)) = rem.leading() {
            let e = e.values();
            let q_e: Vec<i64> = e.iter().zip(&d_lead_e).map(|(a, b)| a - b).collect();
            let (q_c, r_c) = c.div_rem(&d_lead_c);
            if q_e.iter().any(|&x| x < 0) || !r_c.is_zero() {
                return Err(Error::NotDivisible(rem.to_string()));
            }
            let step = IntPolynomial::monomial(q_c, MultiIndex::finite(&q_e));
            rem = &rem - &(&step * &d);
            quotient = &quotient + &step;
        }
        let back: Vec<i64> = num_lo.iter().zip(&den_lo).map(|(a, b)| a - b).collect();
        Ok(quotient.shift(&back))
    }

    /// Truncate to the box `0 ≤ v ≤ window`. Negative exponents are an error.
    pub fn to_series(&self, window: &[i64]) -> Result<TruncatedSeries> {
        if window.len() != self.r {
            return Err(Error::Arity { expected: self.r, found: window.len() });
        }
        if self.has_negative_exponents() {
            return Err(Error::Input(format!("cannot view {self} as a power series: negative exponents")));
        }
        Ok(TruncatedSeries::from_terms(window.to_vec(), self.terms.iter().map(|(e, c)| (e.clone(), c.clone()))))
    }

    /// Evaluate at an integer point (only nonnegative exponents allowed).
    pub fn eval(&self, point: &[i64]) -> BigInt {
        assert_eq!(point.len(), self.r);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, k) in point.iter().zip(e.values()) {
                assert!(k >= 0, "eval needs nonnegative exponents");
                term *= BigInt::from(*x).pow(k as u32);
            }
            acc += term;
        }
        acc
    }

    /// Largest absolute coefficient, used for quick sanity reporting.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.r, rhs.r, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.r, rhs.r, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { r: self.r, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.r, rhs.r, "arity mismatch");
        let mut out = IntPolynomial::zero(self.r);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Diagonal for IntPolynomial {
    fn diagonal(&self) -> IntPolynomial {
        IntPolynomial::from_terms(
            1,
            self.terms.iter().map(|(e, c)| {
                let n = e.norm().finite().expect("finite exponents");
                (MultiIndex::finite(&[n]), c.clone())
            }),
        )
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms.iter()))
    }
}
