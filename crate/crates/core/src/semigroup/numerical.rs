use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Elements up to a bound together with a certified conductor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupEnumeration {
    pub elements: Vec<u64>,
    pub conductor: u64,
}

impl SemigroupEnumeration {
    pub fn contains(&self, v: u64) -> bool {
        v >= self.conductor || self.elements.binary_search(&v).is_ok()
    }

    /// Gaps, all of which lie below the conductor.
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&v| !self.contains(v)).collect()
    }
}

/// Membership table `0..=limit` for the semigroup generated by `gens`.
pub fn membership(gens: &[u64], limit: u64) -> Vec<bool> {
    let mut member = vec![false; limit as usize + 1];
    member[0] = true;
    for v in 1..=limit as usize {
        member[v] = gens.iter().any(|&g| g as usize <= v && member[v - g as usize]);
    }
    member
}

fn check_generators(gens: &[u64]) -> Result<()> {
    if gens.is_empty() || gens.contains(&0) {
        return Err(Error::Input(format!("generators must be positive, got {gens:?}")));
    }
    if gens.iter().fold(0u64, |g, &x| g.gcd(&x)) != 1 {
        return Err(Error::NotCofinite(gens.to_vec()));
    }
    Ok(())
}

/// The conductor: start of the first run of `max(gens)` consecutive members.
fn find_conductor(gens: &[u64]) -> u64 {
    let run = *gens.iter().max().expect("nonempty generators");
    let mut limit = 4 * run + 16;
    loop {
        let member = membership(gens, limit);
        let mut start = 0usize;
        for (v, &m) in member.iter().enumerate() {
            if !m {
                start = v + 1;
            } else if (v + 1 - start) as u64 >= run {
                return start as u64;
            }
        }
        limit *= 2;
    }
}

/// Members `≤ bound` and the conductor of `⟨gens⟩`.
pub fn enumerate_semigroup(gens: &[u64], bound: u64) -> Result<SemigroupEnumeration> {
    check_generators(gens)?;
    let conductor = find_conductor(gens);
    let member = membership(gens, bound);
    let elements = (0..=bound).filter(|&v| member[v as usize]).collect();
    Ok(SemigroupEnumeration { elements, conductor })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_semigroup() {
        let e = enumerate_semigroup(&[2, 3], 10).unwrap();
        assert_eq!(e.elements, vec![0, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        assert_eq!(e.conductor, 2);
    }

    #[test]
    fn everything() {
        let e = enumerate_semigroup(&[1], 5).unwrap();
        assert_eq!(e.elements, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(e.conductor, 0);
        assert!(e.gaps().is_empty());
    }

    #[test]
    fn three_generators() {
        let e = enumerate_semigroup(&[4, 6, 13], 20).unwrap();
        assert_eq!(e.elements, vec![0, 4, 6, 8, 10, 12, 13, 14, 16, 17, 18, 19, 20]);
        assert_eq!(e.conductor, 16);
        assert_eq!(e.gaps(), vec![1, 2, 3, 5, 7, 9, 11, 15]);
    }

    #[test]
    fn non_cofinite() {
        assert_eq!(enumerate_semigroup(&[4, 6], 10), Err(Error::NotCofinite(vec![4, 6])));
        assert!(matches!(enumerate_semigroup(&[0, 1], 10), Err(Error::Input(_))));
    }
}
