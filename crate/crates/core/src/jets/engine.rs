use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use super::branch::CurveModel;
use crate::error::{Error, Result};
use crate::linalg;
use crate::series::MultiIndex;

/// Caps on the precision ladder: jet degree `N` and truncation order `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetConfig {
    pub n_cap: usize,
    pub m_cap: usize,
}

impl Default for JetConfig {
    fn default() -> Self {
        JetConfig { n_cap: 1024, m_cap: 4096 }
    }
}

impl JetConfig {
    /// A single bound applied to both ladders.
    pub fn with_cap(cap: usize) -> Self {
        JetConfig { n_cap: cap, m_cap: cap.saturating_mul(4) }
    }
}

/// `dim` of `Im j_v ∩ {a_i = 0, i ∈ I}` for every subset `I`, and the
/// Euler characteristic of the projectivized fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub v: Vec<i64>,
    /// `(I, dim)` with `I` a sorted list of 1-based branch labels.
    pub dims: Vec<(Vec<usize>, usize)>,
    pub chi_pf: i64,
    pub cv: usize,
}

impl FiberReport {
    pub fn dim(&self, subset: &[usize]) -> Option<usize> {
        self.dims.iter().find(|(s, _)| s == subset).map(|(_, d)| *d)
    }
}

/// Rank computations on the jet constraint matrices of one curve, cached
/// by the (clamped) valuation vector.
pub struct JetEngine<'a> {
    curve: &'a CurveModel,
    config: JetConfig,
    ranks: HashMap<(Vec<usize>, usize), usize>,
}

fn clamp(v: &[i64]) -> Vec<usize> {
    v.iter().map(|&x| x.max(0) as usize).collect()
}

fn monomial_count(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

impl<'a> JetEngine<'a> {
    pub fn new(curve: &'a CurveModel, config: JetConfig) -> Self {
        JetEngine { curve, config, ranks: HashMap::new() }
    }

    pub fn curve(&self) -> &CurveModel {
        self.curve
    }

    pub fn config(&self) -> JetConfig {
        self.config
    }

    fn check_arity(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.curve.r() {
            return Err(Error::Arity { expected: self.curve.r(), found: v.len() });
        }
        Ok(())
    }

    /// Every queried coefficient index must stay below `M/2`, with `M` the
    /// larger of the branch truncation and `4N`.
    fn check_ladder(&self, w: &[usize], n: usize) -> Result<()> {
        let m = self.curve.trunc_order().max(4 * n);
        let w_max = w.iter().copied().max().unwrap_or(0);
        if n > self.config.n_cap || m > self.config.m_cap || 2 * w_max > m {
            return Err(Error::Precision(format!(
                "ladder exhausted at N = {n}, M = {m} (caps N <= {}, M <= {}) for orders up to {w_max}",
                self.config.n_cap, self.config.m_cap
            )));
        }
        Ok(())
    }

    /// Rank of the conditions `v_i(g) ≥ w_i` on polynomials of degree `≤ n`.
    ///
    /// A monomial of degree `≥ max w` satisfies every condition, so only the
    /// degrees below that bound contribute columns.
    pub fn rank(&mut self, w: &[usize], n: usize) -> Result<usize> {
        self.check_ladder(w, n)?;
        let w_max = w.iter().copied().max().unwrap_or(0);
        let eff = n.min(w_max);
        let key = (w.to_vec(), eff);
        if let Some(&r) = self.ranks.get(&key) {
            return Ok(r);
        }
        let branches = self.curve.branches();
        let columns: Vec<(u32, u32)> = (0..=eff as u32)
            .flat_map(|s| (0..=s).map(move |a| (a, s - a)))
            .filter(|&(a, b)| branches.iter().zip(w).any(|(br, &wi)| br.monomial_order(a, b).is_some_and(|o| o < wi)))
            .collect();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (br, &wi) in branches.iter().zip(w) {
            if wi == 0 {
                continue;
            }
            let (xp, yp) = br.powers(eff as u32, eff as u32, wi);
            let series: Vec<_> =
                columns.iter().map(|&(a, b)| xp[a as usize].mul_trunc(&yp[b as usize], Some(wi))).collect();
            for k in 0..wi {
                rows.push(series.iter().map(|s| s.coeff(k)).collect());
            }
        }
        let rank = linalg::rational_rank(&rows);
        self.ranks.insert(key, rank);
        Ok(rank)
    }

    /// `dim {g : deg g ≤ n, v_i(g) ≥ v_i}`.
    pub fn jet_subspace_dim(&mut self, v: &[i64], n: usize) -> Result<usize> {
        self.check_arity(v)?;
        Ok(monomial_count(n) - self.rank(&clamp(v), n)?)
    }

    fn c_at(&mut self, v: &[i64], n: usize) -> Result<usize> {
        let up: Vec<i64> = v.iter().map(|x| x + 1).collect();
        Ok(self.rank(&clamp(&up), n)? - self.rank(&clamp(v), n)?)
    }

    fn start_degree(v: &[i64]) -> usize {
        2 * (1 + v.iter().copied().max().unwrap_or(0).max(0) as usize)
    }

    /// `c(v) = dim J(v)/J(v + 1̲)`, recomputed at `N` and `N + 1` until the
    /// two agree, doubling `N` otherwise.
    pub fn c_of_v(&mut self, v: &[i64], n: Option<usize>) -> Result<usize> {
        self.check_arity(v)?;
        let mut n = n.unwrap_or_else(|| Self::start_degree(v)).max(1);
        loop {
            let a = self.c_at(v, n)?;
            let b = self.c_at(v, n + 1)?;
            if a == b {
                return Ok(a);
            }
            n *= 2;
        }
    }

    fn dims_at(&mut self, v: &[i64], n: usize) -> Result<Vec<(Vec<usize>, usize)>> {
        let r = v.len();
        let full: Vec<i64> = v.iter().map(|x| x + 1).collect();
        let top = self.rank(&clamp(&full), n)?;
        let mut out = Vec::with_capacity(1 << r);
        for mask in 0..(1usize << r) {
            let subset: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let w: Vec<i64> = v.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { x + 1 } else { x }).collect();
            out.push((subset, top - self.rank(&clamp(&w), n)?));
        }
        out.sort();
        Ok(out)
    }

    /// Inclusion–exclusion over the coordinate hyperplanes of the fiber.
    pub fn fiber_report(&mut self, v: &[i64], n: Option<usize>) -> Result<FiberReport> {
        self.check_arity(v)?;
        if v.iter().any(|&x| x < 0) {
            return Err(Error::Input(format!("fiber reports need v >= 0, got {v:?}")));
        }
        let mut n = n.unwrap_or_else(|| Self::start_degree(v)).max(1);
        let dims = loop {
            let a = self.dims_at(v, n)?;
            if a == self.dims_at(v, n + 1)? {
                break a;
            }
            n *= 2;
        };
        let chi_pf = dims.iter().map(|(s, d)| if s.len() % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
        let cv = dims.iter().find(|(s, _)| s.is_empty()).map(|(_, d)| *d).unwrap_or(0);
        Ok(FiberReport { v: v.to_vec(), dims, chi_pf, cv })
    }

    pub fn cache_len(&self) -> usize {
        self.ranks.len()
    }
}

fn finite(v: &MultiIndex) -> Result<Vec<i64>> {
    v.to_finite().ok_or_else(|| Error::Input(format!("valuation vector {v} must be finite")))
}

pub fn jet_subspace_dim(curve: &CurveModel, v: &MultiIndex, n: usize) -> Result<usize> {
    JetEngine::new(curve, JetConfig::default()).jet_subspace_dim(&finite(v)?, n)
}

pub fn c_of_v(curve: &CurveModel, v: &MultiIndex, n: Option<usize>) -> Result<usize> {
    JetEngine::new(curve, JetConfig::default()).c_of_v(&finite(v)?, n)
}

pub fn fiber_report(curve: &CurveModel, v: &MultiIndex, n: Option<usize>) -> Result<FiberReport> {
    JetEngine::new(curve, JetConfig::default()).fiber_report(&finite(v)?, n)
}
