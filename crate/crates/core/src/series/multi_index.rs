use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// An integer extended by `+∞`.
///
/// Valuations of functions vanishing identically on a branch are infinite.
/// `Finite(_) < Infinity` so that derived orderings put the sentinel last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtInt {
    Finite(i64),
    Infinity,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            ExtInt::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl Add for ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => ExtInt::Finite(a + b),
            _ => ExtInt::Infinity,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::Infinity => write!(f, "inf"),
        }
    }
}

/// An exponent vector in `Z^r`, each entry possibly infinite.
///
/// The derived `Ord` is lexicographic and is only used for canonical term
/// ordering; the mathematical partial order is [`MultiIndex::le`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<ExtInt>);

impl MultiIndex {
    pub fn new(entries: Vec<ExtInt>) -> Self {
        MultiIndex(entries)
    }

    pub fn finite(entries: &[i64]) -> Self {
        MultiIndex(entries.iter().map(|&v| ExtInt::Finite(v)).collect())
    }

    pub fn zero(r: usize) -> Self {
        MultiIndex(vec![ExtInt::Finite(0); r])
    }

    /// The all-ones vector `1̲`.
    pub fn ones(r: usize) -> Self {
        MultiIndex(vec![ExtInt::Finite(1); r])
    }

    /// The unit vector with a one in coordinate `i`.
    pub fn unit(r: usize, i: usize) -> Self {
        let mut v = vec![ExtInt::Finite(0); r];
        v[i] = ExtInt::Finite(1);
        MultiIndex(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[ExtInt] {
        &self.0
    }

    pub fn get(&self, i: usize) -> ExtInt {
        self.0[i]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|e| e.is_finite())
    }

    /// Finite entries as plain integers, or `None` if any entry is infinite.
    pub fn to_finite(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|e| e.finite()).collect()
    }

    /// Finite entries; panics on an infinite entry. Only for indices already
    /// known to be finite, such as series keys.
    pub fn values(&self) -> Vec<i64> {
        self.to_finite().expect("multi-index has an infinite entry")
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise comparison when the two indices are comparable.
    pub fn partial_cmp_componentwise(&self, other: &MultiIndex) -> Option<Ordering> {
        match (self.le(other), other.le(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }

    /// `‖v‖ = v_1 + … + v_r`.
    pub fn norm(&self) -> ExtInt {
        self.0.iter().fold(ExtInt::Finite(0), |acc, &e| acc + e)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|e| *e >= ExtInt::Finite(0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| *e == ExtInt::Finite(0))
    }

    /// Multiply every finite entry by `k ≥ 0`.
    pub fn scale(&self, k: i64) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .map(|e| match e {
                    ExtInt::Finite(v) => ExtInt::Finite(v * k),
                    ExtInt::Infinity => ExtInt::Infinity,
                })
                .collect(),
        )
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        MultiIndex::finite(&v)
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        assert_eq!(self.arity(), rhs.arity(), "arity mismatch in multi-index sum");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl Sub for &MultiIndex {
    type Output = MultiIndex;
    /// Difference of finite indices.
    fn sub(self, rhs: &MultiIndex) -> MultiIndex {
        let a = self.values();
        let b = rhs.values();
        assert_eq!(a.len(), b.len(), "arity mismatch in multi-index difference");
        MultiIndex::finite(&a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}
