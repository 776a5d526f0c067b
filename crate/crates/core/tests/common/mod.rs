//! Reference implementations used as oracles by the integration tests.
//! They favour obviousness over speed and share no code with the library.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use singcurve_core::jets::{rat, BranchParam, CurveModel, DEFAULT_TRUNC};
use singcurve_core::{MultiIndex, TruncatedSeries};

/// Generalized binomial coefficient `binom(e, k)` for any integer `e`.
pub fn binom(e: i64, k: i64) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k {
        num *= (e - j) as i128;
        den *= (j + 1) as i128;
        let g = gcd(num.abs(), den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Coefficients of `∏ (1 − t^m)^e` up to `t^bound`, each factor expanded
/// by the binomial theorem and multiplied in by schoolbook convolution.
pub fn product_1d(factors: &[(i64, i64)], bound: usize) -> Vec<i128> {
    let mut acc = vec![0i128; bound + 1];
    acc[0] = 1;
    for &(m, e) in factors {
        let mut f = vec![0i128; bound + 1];
        let mut k = 0;
        while (k * m) as usize <= bound {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            f[(k * m) as usize] = sign * binom(e, k);
            k += 1;
        }
        let mut next = vec![0i128; bound + 1];
        for i in 0..=bound {
            for j in 0..=bound - i {
                next[i + j] += acc[i] * f[j];
            }
        }
        acc = next;
    }
    acc
}

/// Two-variable version on the box `[0, b1] × [0, b2]`.
pub fn product_2d(factors: &[((i64, i64), i64)], b1: usize, b2: usize) -> Vec<Vec<i128>> {
    let mut acc = vec![vec![0i128; b2 + 1]; b1 + 1];
    acc[0][0] = 1;
    for &((m1, m2), e) in factors {
        let mut f = vec![vec![0i128; b2 + 1]; b1 + 1];
        let mut k = 0i64;
        while (k * m1) as usize <= b1 && (k * m2) as usize <= b2 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            f[(k * m1) as usize][(k * m2) as usize] = sign * binom(e, k);
            k += 1;
            if m1 == 0 && m2 == 0 {
                break;
            }
        }
        let mut next = vec![vec![0i128; b2 + 1]; b1 + 1];
        for i1 in 0..=b1 {
            for i2 in 0..=b2 {
                if acc[i1][i2] == 0 {
                    continue;
                }
                for j1 in 0..=b1 - i1 {
                    for j2 in 0..=b2 - i2 {
                        next[i1 + j1][i2 + j2] += acc[i1][i2] * f[j1][j2];
                    }
                }
            }
        }
        acc = next;
    }
    acc
}

pub fn series_from_1d(coeffs: &[i128]) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        vec![coeffs.len() as i64 - 1],
        coeffs.iter().enumerate().map(|(k, &c)| (MultiIndex::finite(&[k as i64]), BigInt::from(c))),
    )
}

pub fn series_from_2d(coeffs: &[Vec<i128>]) -> TruncatedSeries {
    let b1 = coeffs.len() as i64 - 1;
    let b2 = coeffs[0].len() as i64 - 1;
    let mut terms = Vec::new();
    for (i, row) in coeffs.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            terms.push((MultiIndex::finite(&[i as i64, j as i64]), BigInt::from(c)));
        }
    }
    TruncatedSeries::from_terms(vec![b1, b2], terms)
}

/// Members of `⟨gens⟩` up to `bound`, by marking every sum reachable from 0.
pub fn members(gens: &[u64], bound: u64) -> Vec<bool> {
    let mut seen = vec![false; bound as usize + 1];
    seen[0] = true;
    for v in 0..=bound as usize {
        if seen[v] {
            for &g in gens {
                if v + g as usize <= bound as usize {
                    seen[v + g as usize] = true;
                }
            }
        }
    }
    seen
}

/// `1 + (largest gap)`, or 0 without gaps; `None` if a gap reaches `bound`.
pub fn conductor(gens: &[u64], bound: u64) -> Option<u64> {
    let m = members(gens, bound);
    let last_gap = (0..=bound).rev().find(|&v| !m[v as usize]);
    match last_gap {
        None => Some(0),
        Some(g) if g + *gens.iter().max().unwrap() < bound => Some(g + 1),
        Some(_) => None,
    }
}

/// Semigroup generators from characteristic exponents via the classical
/// recursion `β̄_{j+1} = n_j β̄_j + β_{j+1} − β_j`, with `n_j = e_{j-1}/e_j`.
pub fn generators(beta: &[u64]) -> Vec<u64> {
    let mut e = vec![beta[0]];
    for b in &beta[1..] {
        let last = *e.last().unwrap();
        e.push(num_integer::gcd(last, *b));
    }
    let mut gens = vec![beta[0]];
    if beta.len() > 1 {
        gens.push(beta[1]);
    }
    for j in 1..beta.len() - 1 {
        let n = e[j - 1] / e[j];
        gens.push(n * gens[j] + beta[j + 1] - beta[j]);
    }
    gens
}

pub type Terms<'a> = &'a [(usize, i64)];

/// Curve from `(x terms, y terms)` with integer coefficients.
pub fn curve(branches: &[(Terms, Terms)]) -> CurveModel {
    let conv = |t: Terms| t.iter().map(|&(e, c)| (e, rat(c))).collect::<Vec<(usize, BigRational)>>();
    CurveModel::new(
        branches.iter().map(|(x, y)| BranchParam::new(&conv(x), &conv(y), DEFAULT_TRUNC).unwrap()).collect(),
    )
    .unwrap()
}

pub fn node() -> CurveModel {
    curve(&[(&[(1, 1)], &[]), (&[], &[(1, 1)])])
}

pub fn tacnode() -> CurveModel {
    curve(&[(&[(1, 1)], &[(2, 1)]), (&[(1, 1)], &[(2, -1)])])
}

pub fn cusp_and_line() -> CurveModel {
    curve(&[(&[(2, 1)], &[(3, 1)]), (&[], &[(1, 1)])])
}

pub fn three_lines() -> CurveModel {
    curve(&[(&[(1, 1)], &[]), (&[], &[(1, 1)]), (&[(1, 1)], &[(1, 1)])])
}

pub fn fixtures_dir() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}
