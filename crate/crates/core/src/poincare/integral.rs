use num_bigint::BigInt;

use super::window::{box_points, PoincareSeries};
use crate::error::{Error, Result};
use crate::jets::JetEngine;
use crate::series::{specialize_diagonal, IntPolynomial, MultiIndex, TruncatedSeries};

/// Whether the integral keeps all `r` variables or sets them equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralMode {
    Multivariate,
    Diagonal,
}

fn collect(r: usize, hi: &[i64], mut chi: impl FnMut(&[i64]) -> Result<i64>) -> Result<PoincareSeries> {
    let mut terms = Vec::new();
    for v in box_points(&vec![0; r], hi) {
        let x = chi(&v)?;
        if x == 0 {
            continue;
        }
        if r > 1 && v.iter().zip(hi).any(|(a, b)| a == b) {
            return Err(Error::Margin(format!("Euler characteristic {x} on the window boundary at {v:?}")));
        }
        terms.push((MultiIndex::finite(&v), BigInt::from(x)));
    }
    Ok(if r > 1 {
        PoincareSeries::Polynomial(IntPolynomial::from_terms(r, terms))
    } else {
        PoincareSeries::Series(TruncatedSeries::from_terms(hi.to_vec(), terms))
    })
}

/// `Σ_v χ(ℙF_v) t^v` over `0 ≤ v ≤ hi`, each fiber computed on the default
/// ladder. For several branches the sum must vanish on the outer shell.
pub fn x_series(engine: &mut JetEngine, hi: &[i64]) -> Result<PoincareSeries> {
    let r = engine.curve().r();
    if hi.len() != r {
        return Err(Error::Arity { expected: r, found: hi.len() });
    }
    collect(r, hi, |v| Ok(engine.fiber_report(v, None)?.chi_pf))
}

/// The same sum, with every fiber read off the jet space of degree
/// `k = 1 + max v_i`.
pub fn euler_integral(engine: &mut JetEngine, hi: &[i64], mode: IntegralMode) -> Result<PoincareSeries> {
    let r = engine.curve().r();
    if hi.len() != r {
        return Err(Error::Arity { expected: r, found: hi.len() });
    }
    let full = collect(r, hi, |v| {
        let k = 1 + v.iter().copied().max().unwrap_or(0) as usize;
        Ok(engine.fiber_report(v, Some(k))?.chi_pf)
    })?;
    Ok(match (mode, full) {
        (IntegralMode::Diagonal, PoincareSeries::Polynomial(p)) => PoincareSeries::Polynomial(specialize_diagonal(&p)),
        (_, other) => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::testing::curve;
    use crate::jets::JetConfig;

    #[test]
    fn node_integral_is_one() {
        let c = curve(&[(&[(1, 1)], &[]), (&[], &[(1, 1)])]);
        let mut e = JetEngine::new(&c, JetConfig::default());
        assert_eq!(x_series(&mut e, &[3, 3]).unwrap().to_text(), "1");
        assert_eq!(euler_integral(&mut e, &[3, 3], IntegralMode::Diagonal).unwrap().to_text(), "1");
    }

    #[test]
    fn tacnode_diagonal() {
        let c = curve(&[(&[(1, 1)], &[(2, 1)]), (&[(1, 1)], &[(2, -1)])]);
        let mut e = JetEngine::new(&c, JetConfig::default());
        assert_eq!(x_series(&mut e, &[4, 4]).unwrap().to_text(), "1 + 1*t1^1*t2^1");
        assert_eq!(euler_integral(&mut e, &[4, 4], IntegralMode::Diagonal).unwrap().to_text(), "1 + 1*t1^2");
    }

    #[test]
    fn cusp_semigroup_indicator() {
        let c = curve(&[(&[(2, 1)], &[(3, 1)])]);
        let mut e = JetEngine::new(&c, JetConfig::default());
        let PoincareSeries::Series(s) = x_series(&mut e, &[8]).unwrap() else { panic!() };
        let got: Vec<i64> = (0..=8).filter(|&v| s.coeff_at(&[v]) == BigInt::from(1)).collect();
        assert_eq!(got, vec![0, 2, 3, 4, 5, 6, 7, 8]);
    }
}
