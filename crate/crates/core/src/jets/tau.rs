use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A power series in one variable `τ` with rational coefficients, known
/// modulo `τ^prec` (or exactly, when `prec` is `None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSeries {
    coeffs: Vec<BigRational>,
    prec: Option<usize>,
}

/// The rational number `n`.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TauSeries {
    /// An exact polynomial from `(exponent, coefficient)` pairs.
    pub fn polynomial(terms: &[(usize, BigRational)]) -> Self {
        let len = terms.iter().map(|(e, _)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); len];
        for (e, c) in terms {
            coeffs[*e] += c;
        }
        TauSeries { coeffs, prec: None }.normalized()
    }

    pub fn monomial(e: usize, c: BigRational) -> Self {
        Self::polynomial(&[(e, c)])
    }

    pub fn zero() -> Self {
        TauSeries { coeffs: Vec::new(), prec: None }
    }

    fn normalized(mut self) -> Self {
        if let Some(p) = self.prec {
            self.coeffs.truncate(p);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    /// Forget everything from `τ^prec` on.
    pub fn truncate(&self, prec: usize) -> Self {
        let p = self.prec.map_or(prec, |q| q.min(prec));
        TauSeries { coeffs: self.coeffs.clone(), prec: Some(p) }.normalized()
    }

    pub fn precision(&self) -> Option<usize> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Known coefficients (the tail beyond the returned slice is zero up to
    /// the precision).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Order in `τ`: `Ok(None)` for the exact zero series, an error when every
    /// known coefficient vanishes but the series is truncated.
    pub fn order(&self) -> Result<Option<usize>> {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Ok(Some(k)),
            None if self.is_exact() => Ok(None),
            None => Err(Error::Precision(format!("series vanishes modulo tau^{}", self.prec.unwrap_or(0)))),
        }
    }

    pub fn leading(&self) -> Option<BigRational> {
        self.coeffs.iter().find(|c| !c.is_zero()).cloned()
    }

    fn combine_prec(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &TauSeries) -> TauSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        TauSeries { coeffs, prec: Self::combine_prec(self.prec, other.prec) }.normalized()
    }

    pub fn sub(&self, other: &TauSeries) -> TauSeries {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> TauSeries {
        TauSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect(), prec: self.prec }.normalized()
    }

    /// Product, optionally truncated further at `limit`.
    pub fn mul_trunc(&self, other: &TauSeries, limit: Option<usize>) -> TauSeries {
        // Precision of a product: (a + O(τ^p))(b + O(τ^q)) is known below
        // min(p + ord b, q + ord a).
        let oa = self.coeffs.iter().position(|c| !c.is_zero());
        let ob = other.coeffs.iter().position(|c| !c.is_zero());
        let prec_a = self.prec.map(|p| p + ob.unwrap_or(0));
        let prec_b = other.prec.map(|q| q + oa.unwrap_or(0));
        let prec = Self::combine_prec(Self::combine_prec(prec_a, prec_b), limit);
        let cap = prec.unwrap_or(usize::MAX);
        let len = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1).min(cap);
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        TauSeries { coeffs, prec }.normalized()
    }

    pub fn pow_trunc(&self, k: u32, limit: Option<usize>) -> TauSeries {
        let mut out = TauSeries::monomial(0, BigRational::one());
        for _ in 0..k {
            out = out.mul_trunc(self, limit);
        }
        out
    }

    /// `self / other`, where `ord self ≥ ord other`. An exact divisor that
    /// is not a monomial has an infinite inverse; `cap` then bounds the
    /// precision of the result.
    pub fn div(&self, other: &TauSeries, cap: usize) -> Result<TauSeries> {
        let b = other.order()?.ok_or_else(|| Error::Inconsistent("division by the zero series".into()))?;
        let num_shift = self.shift_down(b)?;
        let den_shift = other.shift_down(b)?;
        let den_terms = den_shift.coeffs.iter().filter(|c| !c.is_zero()).count();
        let mut prec = Self::combine_prec(num_shift.prec, den_shift.prec);
        if prec.is_none() && den_terms > 1 {
            prec = Some(cap.saturating_sub(b));
        }
        let len = match prec {
            Some(p) => p,
            None => num_shift.coeffs.len(),
        };
        let inv_lead = den_shift.coeff(0).recip();
        let mut q = vec![BigRational::zero(); len];
        for k in 0..len {
            let mut acc = num_shift.coeff(k);
            for j in 1..=k.min(den_shift.coeffs.len().saturating_sub(1)) {
                acc -= den_shift.coeff(j) * &q[k - j];
            }
            q[k] = acc * &inv_lead;
        }
        Ok(TauSeries { coeffs: q, prec }.normalized())
    }

    /// `self / τ^b`; fails unless the first `b` known coefficients vanish.
    fn shift_down(&self, b: usize) -> Result<TauSeries> {
        if self.coeffs.iter().take(b).any(|c| !c.is_zero()) {
            return Err(Error::Inconsistent(format!("series has order below {b}")));
        }
        if let Some(p) = self.prec {
            if p < b {
                return Err(Error::Precision(format!("cannot divide by tau^{b} at precision {p}")));
            }
        }
        Ok(TauSeries { coeffs: self.coeffs.iter().skip(b).cloned().collect(), prec: self.prec.map(|p| p - b) })
    }
}

impl fmt::Display for TauSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*tau^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(p) = self.prec {
            write!(f, " + O(tau^{p})")?;
        }
        Ok(())
    }
}
