use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::branch::{CurveModel, Germ, Valuation};
use crate::error::{Error, Result};

/// Outcome of a batch of random perturbations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminacyOutcome {
    pub samples: usize,
    pub level: usize,
    /// The first perturbation that changed a finite valuation or its leading
    /// coefficient.
    pub counterexample: Option<String>,
}

impl DeterminacyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// A random germ all of whose monomials have total degree in `[k, k + 2]`.
pub fn random_high_order_germ<R: Rng>(rng: &mut R, k: u32) -> Germ {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let d = k + rng.gen_range(0..=2);
        let a = rng.gen_range(0..=d);
        let num: i64 = loop {
            let c = rng.gen_range(-9..=9);
            if c != 0 {
                break c;
            }
        };
        let den: i64 = rng.gen_range(1..=5);
        terms.push(((a, d - a), BigRational::new(BigInt::from(num), BigInt::from(den))));
    }
    Germ::from_terms(terms)
}

/// Checks that perturbing `g` by terms of degree `≥ 1 + max v_i` leaves the
/// finite valuations and their leading coefficients unchanged.
pub fn jet_determinacy_check<R: Rng>(
    curve: &CurveModel,
    g: &Germ,
    samples: usize,
    rng: &mut R,
) -> Result<DeterminacyOutcome> {
    let base = curve.valuations(g)?;
    let max_v = base
        .iter()
        .filter_map(Valuation::order)
        .max()
        .ok_or_else(|| Error::Input(format!("{g} vanishes on every branch")))?;
    let level = 1 + max_v;
    for _ in 0..samples {
        let h = random_high_order_germ(rng, level as u32);
        let perturbed = curve.valuations(&g.add(&h))?;
        for (i, (before, after)) in base.iter().zip(&perturbed).enumerate() {
            if let Valuation::Finite { .. } = before {
                if before != after {
                    return Ok(DeterminacyOutcome {
                        samples,
                        level,
                        counterexample: Some(format!("branch {}: {before:?} became {after:?} under h = {h}", i + 1)),
                    });
                }
            }
        }
    }
    Ok(DeterminacyOutcome { samples, level, counterexample: None })
}
