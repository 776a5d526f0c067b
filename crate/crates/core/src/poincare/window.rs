use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{euler_smooth_parts, solve_multiplicities, DualGraph};
use crate::jets::JetEngine;
use crate::series::{IntPolynomial, MultiIndex, TruncatedSeries};

/// All integer points of the box `lo ≤ v ≤ hi`, in lexicographic order.
pub(crate) fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (&a, &b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (a..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// The coefficients `c(v)` of the Laurent series `L` on a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentWindow {
    pub r: usize,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    pub values: BTreeMap<Vec<i64>, usize>,
}

impl LaurentWindow {
    pub fn c(&self, v: &[i64]) -> Option<usize> {
        self.values.get(v).copied()
    }
}

/// Tabulates `c(v)` on `[lo, hi]` and checks that `c` is already constant
/// between the two outermost shells in every negative direction.
pub fn build_laurent_window(engine: &mut JetEngine, lo: &[i64], hi: &[i64]) -> Result<LaurentWindow> {
    let r = engine.curve().r();
    if lo.len() != r || hi.len() != r {
        return Err(Error::Arity { expected: r, found: lo.len().min(hi.len()) });
    }
    if lo.iter().zip(hi).any(|(&a, &b)| a > 0 || b < 0 || a >= b) {
        return Err(Error::Input(format!("window {lo:?}..{hi:?} must satisfy lo <= 0 <= hi, lo < hi")));
    }
    let mut values = BTreeMap::new();
    for v in box_points(lo, hi) {
        let c = engine.c_of_v(&v, None)?;
        values.insert(v, c);
    }
    let lw = LaurentWindow { r, lo: lo.to_vec(), hi: hi.to_vec(), values };
    for i in 0..r {
        for (v, &c) in &lw.values {
            if v[i] == lo[i] {
                let mut next = v.clone();
                next[i] += 1;
                if lw.values[&next] != c {
                    return Err(Error::Margin(format!("c is not constant along axis {} near {v:?}", i + 1)));
                }
            }
        }
    }
    Ok(lw)
}

/// `P′ = L · ∏_i (t_i − 1)`, whose coefficient at `w` is
/// `Σ_I (−1)^{r−|I|} c(w − 1_I)`. The support must avoid the outer shells
/// of the window.
pub fn p_prime(lw: &LaurentWindow) -> Result<IntPolynomial> {
    let r = lw.r;
    let lo: Vec<i64> = lw.lo.iter().map(|x| x + 1).collect();
    let mut terms = Vec::new();
    for w in box_points(&lo, &lw.hi) {
        let mut acc = BigInt::zero();
        for mask in 0..(1usize << r) {
            let shifted: Vec<i64> = w.iter().enumerate().map(|(i, &x)| x - (mask >> i & 1) as i64).collect();
            let c = BigInt::from(lw.values[&shifted]);
            if (r - mask.count_ones() as usize).is_multiple_of(2) {
                acc += c;
            } else {
                acc -= c;
            }
        }
        if acc.is_zero() {
            continue;
        }
        let on_shell = w.iter().enumerate().any(|(i, &x)| x == lo[i] || x == lw.hi[i]);
        if on_shell {
            return Err(Error::Margin(format!("P' has coefficient {acc} on the window boundary at {w:?}")));
        }
        terms.push((MultiIndex::finite(&w), acc));
    }
    Ok(IntPolynomial::from_terms(r, terms))
}

/// The Poincaré series: a polynomial for several branches, a window series
/// for one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoincareSeries {
    Polynomial(IntPolynomial),
    Series(TruncatedSeries),
}

impl PoincareSeries {
    pub fn to_text(&self) -> String {
        match self {
            PoincareSeries::Polynomial(p) => p.to_string(),
            PoincareSeries::Series(s) => s.to_string(),
        }
    }
}

/// `t_1 ⋯ t_r − 1`.
pub fn product_minus_one(r: usize) -> IntPolynomial {
    &IntPolynomial::monomial(BigInt::one(), MultiIndex::ones(r)) - &IntPolynomial::one(r)
}

pub fn poincare_from_jets(lw: &LaurentWindow) -> Result<PoincareSeries> {
    let pp = p_prime(lw)?;
    if lw.r > 1 {
        return Ok(PoincareSeries::Polynomial(pp.exact_divide(&product_minus_one(lw.r))?));
    }
    let hi = lw.hi[0];
    Ok(PoincareSeries::Series(TruncatedSeries::from_terms(
        vec![hi],
        (0..=hi).map(|v| (MultiIndex::finite(&[v]), BigInt::from(lw.values[&vec![v]]))),
    )))
}

/// Default window from a paired graph: `lo = −2`, and above, the degree
/// `Σ_σ (−χ_σ) m_i^σ` of the Alexander polynomial plus a margin of three.
/// One branch needs room past the conductor, so its bound is doubled.
pub fn window_from_graph(g: &DualGraph) -> Result<(Vec<i64>, Vec<i64>)> {
    let table = solve_multiplicities(g)?;
    let chi = euler_smooth_parts(g);
    let r = g.r();
    let hi: Vec<i64> = (0..r)
        .map(|i| {
            let d: i64 = chi.iter().enumerate().map(|(s, c)| -c * table.per_vertex[s][i]).sum();
            if r == 1 {
                2 * (d + 1).max(0) + 3
            } else {
                d.max(0) + 3
            }
        })
        .collect();
    Ok((vec![-2; r], hi))
}

/// For one branch: the top `m` entries of the window are all members, `m`
/// being the multiplicity, so every larger value is a member too.
fn single_branch_tail_certified(lw: &LaurentWindow, mult: usize) -> bool {
    let hi = lw.hi[0];
    (0..mult as i64).all(|k| hi - k >= 0 && lw.values.get(&vec![hi - k]) == Some(&1))
}

/// Builds the window, widening the upper bound until the margins certify.
pub fn adaptive_window(engine: &mut JetEngine, max_hi: i64) -> Result<LaurentWindow> {
    let r = engine.curve().r();
    let lo = vec![-2; r];
    let mult = engine
        .curve()
        .branches()
        .iter()
        .map(|b| {
            let (ox, oy) = b.orders();
            ox.unwrap_or(usize::MAX).min(oy.unwrap_or(usize::MAX))
        })
        .max()
        .unwrap_or(1);
    let mut hi = if r == 1 { 8 } else { 4 };
    let mut last_error = None;
    while hi <= max_hi {
        let attempt = (|| -> Result<Option<LaurentWindow>> {
            let lw = build_laurent_window(engine, &lo, &vec![hi; r])?;
            let pp = p_prime(&lw)?;
            if r == 1 {
                return Ok(single_branch_tail_certified(&lw, mult).then_some(lw));
            }
            // Several branches: accept once widening by two changes nothing.
            let wider = build_laurent_window(engine, &lo, &vec![hi + 2; r])?;
            Ok((p_prime(&wider)? == pp).then_some(lw))
        })();
        match attempt {
            Ok(Some(lw)) => return Ok(lw),
            Ok(None) => {}
            Err(e @ Error::Margin(_)) => last_error = Some(e),
            Err(e) => return Err(e),
        }
        hi *= 2;
    }
    Err(last_error.unwrap_or_else(|| Error::Margin(format!("no certified window up to {max_hi}"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::testing::curve;
    use crate::jets::JetConfig;

    #[test]
    fn node_table_and_p_prime() {
        let c = curve(&[(&[(1, 1)], &[]), (&[], &[(1, 1)])]);
        let mut e = JetEngine::new(&c, JetConfig::default());
        let lw = build_laurent_window(&mut e, &[-2, -2], &[3, 3]).unwrap();
        assert_eq!(lw.c(&[0, 0]), Some(1));
        assert_eq!(lw.c(&[2, 1]), Some(2));
        assert_eq!(lw.c(&[1, 0]), Some(1));
        assert_eq!(lw.c(&[-1, -1]), Some(0));
        assert_eq!(lw.c(&[-1, 2]), Some(1));
        assert_eq!(p_prime(&lw).unwrap().to_string(), "-1 + 1*t1^1*t2^1");
        assert_eq!(poincare_from_jets(&lw).unwrap(), PoincareSeries::Polynomial(IntPolynomial::one(2)));
    }

    #[test]
    fn cusp_series() {
        let c = curve(&[(&[(2, 1)], &[(3, 1)])]);
        let mut e = JetEngine::new(&c, JetConfig::default());
        let lw = build_laurent_window(&mut e, &[-2], &[10]).unwrap();
        assert_eq!(p_prime(&lw).unwrap().to_string(), "-1 + 1*t1^1 - 1*t1^2");
        let PoincareSeries::Series(s) = poincare_from_jets(&lw).unwrap() else { panic!() };
        assert_eq!(s.coeffs().len(), 10);
        assert!(s.coeff_at(&[1]).is_zero());
    }

    #[test]
    fn smooth_p_prime() {
        let c = curve(&[(&[(1, 1)], &[])]);
        let mut e = JetEngine::new(&c, JetConfig::default());
        let lw = build_laurent_window(&mut e, &[-2], &[5]).unwrap();
        assert_eq!(p_prime(&lw).unwrap().to_string(), "-1");
    }

    #[test]
    fn narrow_window_is_rejected() {
        let c = curve(&[(&[(1, 1)], &[(2, 1)]), (&[(1, 1)], &[(2, -1)])]);
        let mut e = JetEngine::new(&c, JetConfig::default());
        let lw = build_laurent_window(&mut e, &[-2, -2], &[2, 2]).unwrap();
        assert!(matches!(p_prime(&lw), Err(Error::Margin(_))));
    }

    #[test]
    fn adaptive_tacnode() {
        let c = curve(&[(&[(1, 1)], &[(2, 1)]), (&[(1, 1)], &[(2, -1)])]);
        let mut e = JetEngine::new(&c, JetConfig::default());
        let lw = adaptive_window(&mut e, 64).unwrap();
        assert_eq!(poincare_from_jets(&lw).unwrap().to_text(), "1 + 1*t1^1*t2^1");
    }
}
