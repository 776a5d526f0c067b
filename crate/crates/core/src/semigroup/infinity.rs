use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::numerical::{enumerate_semigroup, membership};
use crate::error::{Error, Result};
use crate::series::{IntPolynomial, MultiIndex, ProductForm, TruncatedSeries};

/// The semigroup of pole orders at infinity, given by its δ-sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupAtInfinity {
    pub delta: Vec<u64>,
}

impl SemigroupAtInfinity {
    pub fn new(delta: Vec<u64>) -> Result<Self> {
        enumerate_semigroup(&delta, 0)?;
        Ok(SemigroupAtInfinity { delta })
    }

    pub fn conductor(&self) -> Result<u64> {
        Ok(enumerate_semigroup(&self.delta, 0)?.conductor)
    }

    /// The ratios `e_j = d_j / d_{j+1}` with `d_j = gcd(δ_0, …, δ_{j−1})`,
    /// when every `e_j δ_j` already lies in `⟨δ_0, …, δ_{j−1}⟩`.
    pub fn free_ratios(&self) -> Option<Vec<u64>> {
        let mut ratios = Vec::new();
        let mut d = self.delta[0];
        for j in 1..self.delta.len() {
            let next = d.gcd(&self.delta[j]);
            let e = d / next;
            let target = e * self.delta[j];
            if !membership(&self.delta[..j], target)[target as usize] {
                return None;
            }
            ratios.push(e);
            d = next;
        }
        Some(ratios)
    }
}

/// `P_Γ` as a window series with its exact rational descriptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityPoincare {
    pub series: TruncatedSeries,
    pub conductor: u64,
    pub gaps: Vec<u64>,
    /// Members below the conductor, `Q(t) = Σ_{i∈Γ, i<c} t^i`.
    pub below_conductor: IntPolynomial,
    /// `(1 − t)·Q(t) + t^c`, so that `P_Γ = numerator / (1 − t)`.
    pub numerator: IntPolynomial,
    /// `∏_{j≥1}(1 − t^{e_j δ_j}) / ∏_j (1 − t^{δ_j})`, emitted only for free
    /// semigroups.
    pub product: Option<ProductForm>,
}

impl InfinityPoincare {
    /// Expansion of `Q(t) + t^c/(1 − t)` on `[0, bound]`.
    pub fn rational_series(&self, bound: i64) -> Result<TruncatedSeries> {
        let q = self.below_conductor.to_series(&[bound])?;
        let mut tail = ProductForm::with_prefactor(BigInt::from(1), MultiIndex::finite(&[self.conductor as i64]));
        tail.push(MultiIndex::finite(&[1]), -1);
        q.add(&tail.expand(&[bound])?)
    }
}

pub fn poincare_at_infinity(gamma: &SemigroupAtInfinity, window: i64) -> Result<InfinityPoincare> {
    if window < 0 {
        return Err(Error::Input(format!("window must be nonnegative, got {window}")));
    }
    let e = enumerate_semigroup(&gamma.delta, window as u64)?;
    let one = BigInt::from(1);
    let series = TruncatedSeries::from_terms(
        vec![window],
        e.elements.iter().map(|&v| (MultiIndex::finite(&[v as i64]), one.clone())),
    );
    let below = IntPolynomial::from_terms(
        1,
        membership(&gamma.delta, e.conductor)
            .into_iter()
            .enumerate()
            .filter(|&(v, m)| m && (v as u64) < e.conductor)
            .map(|(v, _)| (MultiIndex::finite(&[v as i64]), one.clone())),
    );
    let one_minus_t = IntPolynomial::from_i64_terms(1, &[(&[0], 1), (&[1], -1)]);
    let numerator =
        &(&one_minus_t * &below) + &IntPolynomial::monomial(one.clone(), MultiIndex::finite(&[e.conductor as i64]));
    let product = gamma.free_ratios().map(|ratios| {
        let num = ratios.iter().zip(&gamma.delta[1..]).map(|(&r, &d)| (MultiIndex::finite(&[(r * d) as i64]), 1));
        let den = gamma.delta.iter().map(|&d| (MultiIndex::finite(&[d as i64]), -1));
        ProductForm::from_factors(1, num.chain(den))
    });
    Ok(InfinityPoincare { series, conductor: e.conductor, gaps: e.gaps(), below_conductor: below, numerator, product })
}
