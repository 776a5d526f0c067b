use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::tau::TauSeries;
use crate::error::{Error, Result};
use crate::linalg;

/// Default truncation order `M` of a branch parameterization.
pub const DEFAULT_TRUNC: usize = 64;

/// A parameterization `τ ↦ (x(τ), y(τ))` of one branch, used modulo `τ^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParam {
    x: TauSeries,
    y: TauSeries,
    trunc: usize,
}

impl BranchParam {
    pub fn new(x: &[(usize, BigRational)], y: &[(usize, BigRational)], trunc: usize) -> Result<Self> {
        let x = TauSeries::polynomial(x);
        let y = TauSeries::polynomial(y);
        let ox = x.order()?;
        let oy = y.order()?;
        if ox.is_none() && oy.is_none() {
            return Err(Error::InvalidCurve("both coordinates vanish identically".into()));
        }
        if ox == Some(0) || oy == Some(0) {
            return Err(Error::InvalidCurve("branch does not pass through the origin".into()));
        }
        // A common factor of all exponents means τ ↦ τ^d covers the branch
        // several times.
        let g = x
            .coeffs()
            .iter()
            .enumerate()
            .chain(y.coeffs().iter().enumerate())
            .filter(|(_, c)| !c.is_zero())
            .fold(0usize, |acc, (e, _)| acc.gcd(&e));
        if g != 1 {
            return Err(Error::InvalidCurve(format!("parameterization is not primitive (exponent gcd {g})")));
        }
        if trunc < 2 {
            return Err(Error::InvalidCurve(format!("truncation order {trunc} is too small")));
        }
        Ok(BranchParam { x, y, trunc })
    }

    pub fn x(&self) -> &TauSeries {
        &self.x
    }

    pub fn y(&self) -> &TauSeries {
        &self.y
    }

    pub fn trunc_order(&self) -> usize {
        self.trunc
    }

    pub fn with_trunc(&self, trunc: usize) -> BranchParam {
        BranchParam { trunc, ..self.clone() }
    }

    /// Orders of `x` and `y` (`None` for a vanishing coordinate).
    pub fn orders(&self) -> (Option<usize>, Option<usize>) {
        (self.x.order().expect("exact"), self.y.order().expect("exact"))
    }

    /// `ord_τ(x^a y^b)`, or `None` when the monomial vanishes on the branch.
    pub fn monomial_order(&self, a: u32, b: u32) -> Option<usize> {
        let (ox, oy) = self.orders();
        let part = |o: Option<usize>, k: u32| if k == 0 { Some(0) } else { o.map(|o| o * k as usize) };
        Some(part(ox, a)? + part(oy, b)?)
    }

    /// `(x^a, y^b)` powers modulo `τ^limit` for `a ≤ max_a`, `b ≤ max_b`.
    pub(crate) fn powers(&self, max_a: u32, max_b: u32, limit: usize) -> (Vec<TauSeries>, Vec<TauSeries>) {
        let build = |s: &TauSeries, n: u32| {
            let mut out = vec![TauSeries::monomial(0, BigRational::one()).truncate(limit)];
            for k in 1..=n as usize {
                let next = out[k - 1].mul_trunc(s, Some(limit));
                out.push(next);
            }
            out
        };
        (build(&self.x, max_a), build(&self.y, max_b))
    }
}

impl fmt::Display for BranchParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x = {}, y = {}", self.x, self.y)
    }
}

/// A polynomial germ `g(x, y)` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Germ {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Germ {
    pub fn zero() -> Self {
        Germ::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigRational)>>(terms: I) -> Self {
        let mut g = Germ::zero();
        for (e, c) in terms {
            g.add_term(e, c);
        }
        g
    }

    pub fn x() -> Self {
        Self::monomial(1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(a: u32, b: u32) -> Self {
        Self::from_terms([((a, b), BigRational::one())])
    }

    fn add_term(&mut self, e: (u32, u32), c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero germ.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn add(&self, other: &Germ) -> Germ {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Germ {
        Germ::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn mul(&self, other: &Germ) -> Germ {
        let mut out = Germ::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    /// `g(x(τ), y(τ))` modulo `τ^limit`.
    pub fn compose(&self, branch: &BranchParam, limit: usize) -> TauSeries {
        let max_a = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let (xp, yp) = branch.powers(max_a, max_b, limit);
        let mut acc = TauSeries::zero().truncate(limit);
        for ((a, b), c) in &self.terms {
            let term = xp[*a as usize].mul_trunc(&yp[*b as usize], Some(limit)).scale(c);
            acc = acc.add(&term);
        }
        acc
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("({c})*x^{a}*y^{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Order and leading coefficient of a germ along a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite {
        order: usize,
        leading: BigRational,
    },
    /// Every coefficient below the truncation order vanishes.
    Infinite,
}

impl Valuation {
    pub fn order(&self) -> Option<usize> {
        match self {
            Valuation::Finite { order, .. } => Some(*order),
            Valuation::Infinite => None,
        }
    }
}

/// Valuation of `g` along `b` modulo `τ^M`. Orders in `[M/2, M)` are
/// refused: the caller must raise `M`.
pub fn order_and_leading(g: &Germ, b: &BranchParam) -> Result<Valuation> {
    let m = b.trunc_order();
    let s = g.compose(b, m);
    match s.coeffs().iter().position(|c| !c.is_zero()) {
        None => Ok(Valuation::Infinite),
        Some(k) if 2 * k >= m => Err(Error::Precision(format!("order {k} is not below half the truncation order {m}"))),
        Some(k) => Ok(Valuation::Finite { order: k, leading: s.coeff(k) }),
    }
}

/// A reduced plane curve germ given by parameterizations of its branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    branches: Vec<BranchParam>,
    /// For each pair `i < j`, a level `L` at which some germ with
    /// `v_i ≥ L` was found to have `v_j < L`.
    separation: Vec<((usize, usize), usize)>,
}

impl CurveModel {
    pub fn new(branches: Vec<BranchParam>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidCurve("a curve needs at least one branch".into()));
        }
        let mut separation = Vec::new();
        for i in 0..branches.len() {
            for j in i + 1..branches.len() {
                let level = separation_level(&branches[i], &branches[j])?;
                separation.push(((i + 1, j + 1), level));
            }
        }
        Ok(CurveModel { branches, separation })
    }

    pub fn r(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[BranchParam] {
        &self.branches
    }

    pub fn separation(&self) -> &[((usize, usize), usize)] {
        &self.separation
    }

    pub fn trunc_order(&self) -> usize {
        self.branches.iter().map(BranchParam::trunc_order).min().unwrap_or(DEFAULT_TRUNC)
    }

    pub fn with_trunc(&self, trunc: usize) -> CurveModel {
        CurveModel {
            branches: self.branches.iter().map(|b| b.with_trunc(trunc)).collect(),
            separation: self.separation.clone(),
        }
    }

    /// `v̲(g)` with leading coefficients, one entry per branch.
    pub fn valuations(&self, g: &Germ) -> Result<Vec<Valuation>> {
        self.branches.iter().map(|b| order_and_leading(g, b)).collect()
    }
}

/// Smallest ladder level `L ≤ M/2` certifying that two branches differ.
fn separation_level(bi: &BranchParam, bj: &BranchParam) -> Result<usize> {
    let m = bi.trunc_order().min(bj.trunc_order());
    let mut level = 2;
    while level <= m / 2 {
        if separates(bi, bj, level) {
            return Ok(level);
        }
        level *= 2;
    }
    Err(Error::InvalidCurve(format!("branches {bi} and {bj} could not be separated below order {}", m / 2)))
}

/// Whether some polynomial of degree `< level` with `v_i(g) ≥ level` has
/// `v_j(g) < level`, i.e. whether the kernel of the branch-`i` conditions
/// escapes the kernel of the branch-`j` conditions. Compared by rank.
fn separates(bi: &BranchParam, bj: &BranchParam, level: usize) -> bool {
    let d = level as u32;
    let monomials: Vec<(u32, u32)> = (0..d).flat_map(|s| (0..=s).map(move |a| (a, s - a))).collect();
    let rows = |b: &BranchParam| -> Vec<Vec<BigRational>> {
        let (xp, yp) = b.powers(d, d, level);
        let cols: Vec<TauSeries> =
            monomials.iter().map(|&(a, e)| xp[a as usize].mul_trunc(&yp[e as usize], Some(level))).collect();
        (0..level).map(|k| cols.iter().map(|s| s.coeff(k)).collect()).collect()
    };
    let ri = rows(bi);
    let mut both = ri.clone();
    both.extend(rows(bj));
    linalg::rational_rank(&both) > linalg::rational_rank(&ri)
}
