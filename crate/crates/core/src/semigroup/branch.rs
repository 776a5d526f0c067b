use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::numerical::{enumerate_semigroup, membership};
use crate::error::{Error, Result};
use crate::series::{MultiIndex, ProductForm};

/// Characteristic exponents `(β_0, …, β_s)` of an irreducible plane branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct CharExponents {
    beta: Vec<u64>,
}

impl CharExponents {
    pub fn new(beta: Vec<u64>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidCharExponents(format!("{beta:?}: {msg}")));
        if beta.is_empty() {
            return bad("empty sequence");
        }
        if beta[0] == 0 {
            return bad("multiplicity must be positive");
        }
        if beta.windows(2).any(|w| w[0] >= w[1]) {
            return bad("exponents must be strictly increasing");
        }
        let e = gcd_chain(&beta);
        if e.windows(2).any(|w| w[1] >= w[0]) {
            return bad("gcd sequence must strictly decrease");
        }
        if *e.last().unwrap() != 1 {
            return bad("gcd of all exponents must be 1");
        }
        Ok(CharExponents { beta })
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    /// Number of Puiseux pairs.
    pub fn s(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn multiplicity(&self) -> u64 {
        self.beta[0]
    }

    /// `e_j = gcd(β_0, …, β_j)`.
    pub fn e(&self) -> Vec<u64> {
        gcd_chain(&self.beta)
    }
}

impl TryFrom<Vec<u64>> for CharExponents {
    type Error = Error;
    fn try_from(beta: Vec<u64>) -> Result<Self> {
        CharExponents::new(beta)
    }
}

impl From<CharExponents> for Vec<u64> {
    fn from(c: CharExponents) -> Vec<u64> {
        c.beta
    }
}

fn gcd_chain(beta: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(beta.len());
    let mut g = 0u64;
    for &b in beta {
        g = g.gcd(&b);
        out.push(g);
    }
    out
}

/// Generators, star multiplicities and conductor of a branch semigroup.
///
/// `star[j-1] = (n[j-1] + 1) · gens[j]` for `j = 1..=s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchSemigroupData {
    pub gens: Vec<u64>,
    pub star: Vec<u64>,
    pub n: Vec<u64>,
    pub conductor: u64,
}

impl BranchSemigroupData {
    pub fn s(&self) -> usize {
        self.gens.len() - 1
    }

    pub fn contains(&self, v: u64) -> bool {
        v >= self.conductor || membership(&self.gens, v)[v as usize]
    }

    /// `v ∈ S ⟺ c − 1 − v ∉ S` for `0 ≤ v < c`.
    pub fn is_symmetric(&self) -> bool {
        if self.conductor == 0 {
            return true;
        }
        let member = membership(&self.gens, self.conductor);
        (0..self.conductor).all(|v| member[v as usize] != member[(self.conductor - 1 - v) as usize])
    }
}

pub fn branch_data_from_char_exponents(ce: &CharExponents) -> Result<BranchSemigroupData> {
    let beta = ce.beta();
    let e = ce.e();
    let s = ce.s();
    let mut gens = vec![beta[0]];
    if s >= 1 {
        gens.push(beta[1]);
    }
    for j in 1..s {
        let next = (e[j - 1] / e[j]) * gens[j] + beta[j + 1] - beta[j];
        gens.push(next);
    }
    let n: Vec<u64> = (1..=s).map(|j| e[j - 1] / e[j] - 1).collect();
    let star: Vec<u64> = (1..=s).map(|j| (n[j - 1] + 1) * gens[j]).collect();
    let conductor = enumerate_semigroup(&gens, 0)?.conductor;
    let data = BranchSemigroupData { gens, star, n, conductor };

    // The generator recursion is only trustworthy if representations are
    // unique exactly on the members.
    let limit = conductor + data.gens.iter().max().copied().unwrap_or(1);
    let member = membership(&data.gens, limit);
    for v in 0..=limit {
        let count = representations(v, &data).len();
        let expected = usize::from(member[v as usize]);
        if count != expected {
            return Err(Error::InvalidCharExponents(format!("{:?}: {count} representations of {v}", ce.beta())));
        }
    }
    Ok(data)
}

/// All `(k_0, …, k_s)` with `k_0 ≥ 0`, `0 ≤ k_j ≤ n_j` and `Σ k_j β̄_j = v`.
pub fn representations(v: u64, data: &BranchSemigroupData) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut ks = vec![0u64; data.gens.len()];
    fn rec(j: usize, rest: u64, ks: &mut Vec<u64>, data: &BranchSemigroupData, out: &mut Vec<Vec<u64>>) {
        if j == 0 {
            if rest.is_multiple_of(data.gens[0]) {
                ks[0] = rest / data.gens[0];
                out.push(ks.clone());
            }
            return;
        }
        for k in 0..=data.n[j - 1] {
            let used = k * data.gens[j];
            if used > rest {
                break;
            }
            ks[j] = k;
            rec(j - 1, rest - used, ks, data, out);
        }
        ks[j] = 0;
    }
    rec(data.gens.len() - 1, v, &mut ks, data, &mut out);
    out
}

/// The representation of `v`, or `None` when `v` is a gap.
pub fn unique_representation(v: u64, data: &BranchSemigroupData) -> Option<Vec<u64>> {
    representations(v, data).into_iter().next()
}

/// `∏_j (1 − t^{ᾱ_j}) / ∏_j (1 − t^{β̄_j})`.
pub fn poincare_closed_form(data: &BranchSemigroupData) -> ProductForm {
    let num = data.star.iter().map(|&a| (MultiIndex::finite(&[a as i64]), 1));
    let den = data.gens.iter().map(|&b| (MultiIndex::finite(&[b as i64]), -1));
    ProductForm::from_factors(1, num.chain(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(beta: &[u64]) -> BranchSemigroupData {
        branch_data_from_char_exponents(&CharExponents::new(beta.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn cusp() {
        let d = data(&[2, 3]);
        assert_eq!(d.gens, vec![2, 3]);
        assert_eq!(d.star, vec![6]);
        assert_eq!(d.n, vec![1]);
        assert_eq!(d.conductor, 2);
    }

    #[test]
    fn two_pairs() {
        let d = data(&[4, 6, 7]);
        assert_eq!(d.gens, vec![4, 6, 13]);
        assert_eq!(d.star, vec![12, 26]);
        assert_eq!(d.conductor, 16);
        let d = data(&[6, 9, 10]);
        assert_eq!(d.gens, vec![6, 9, 19]);
        assert_eq!(d.star, vec![18, 57]);
        let d = data(&[8, 12, 14, 15]);
        assert_eq!(d.gens, vec![8, 12, 26, 53]);
        assert_eq!(d.conductor, 84);
    }

    #[test]
    fn smooth() {
        let d = data(&[1]);
        assert_eq!(d.gens, vec![1]);
        assert!(d.star.is_empty());
        assert_eq!(d.conductor, 0);
        assert_eq!(poincare_closed_form(&d).to_string(), "[1, [0]] * (1 - t^[1])^-1");
    }

    #[test]
    fn representation_examples() {
        let d = data(&[2, 3]);
        assert_eq!(unique_representation(6, &d), Some(vec![3, 0]));
        assert_eq!(unique_representation(1, &d), None);
        assert_eq!(unique_representation(5, &d), Some(vec![1, 1]));
    }

    #[test]
    fn invalid_exponents() {
        for beta in [vec![], vec![2, 4], vec![3, 2], vec![4, 6], vec![4, 6, 8, 9], vec![0, 1]] {
            assert!(matches!(CharExponents::new(beta), Err(Error::InvalidCharExponents(_))));
        }
    }

    #[test]
    fn symmetric() {
        for beta in [&[2, 3][..], &[4, 6, 7], &[3, 5], &[6, 9, 10]] {
            assert!(data(beta).is_symmetric());
        }
    }
}
