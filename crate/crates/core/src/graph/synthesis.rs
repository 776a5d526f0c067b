use num_rational::BigRational;
use num_traits::One;

use super::dual::{dead_end_totals, euler_smooth_parts, solve_multiplicities, Arrow, DualGraph, Vertex};
use crate::error::{Error, Result};
use crate::jets::TauSeries;
use crate::semigroup::{branch_data_from_char_exponents, CharExponents};

const MAX_STEPS: usize = 100_000;
const MAX_PRECISION: usize = 1 << 16;

/// Local state of the strict transform in coordinates `(u, w)`; `du` and
/// `dw` are the exceptional curves `{u = 0}` and `{w = 0}` when those pass
/// through the current point.
struct Chart {
    u: TauSeries,
    w: TauSeries,
    du: Option<u32>,
    dw: Option<u32>,
}

struct Builder {
    vertices: Vec<Vertex>,
    edges: Vec<[u32; 2]>,
}

impl Builder {
    fn lower(&mut self, id: u32) {
        if let Some(v) = self.vertices.iter_mut().find(|v| v.id == id) {
            v.self_int -= 1;
        }
    }

    /// Blows up the current point and returns the new curve's id.
    fn blow_up(&mut self, du: Option<u32>, dw: Option<u32>) -> u32 {
        let new = self.vertices.len() as u32 + 1;
        self.vertices.push(Vertex { id: new, self_int: -1 });
        match (du, dw) {
            (Some(p), Some(q)) => {
                let key = [p.min(q), p.max(q)];
                self.edges.retain(|e| *e != key);
                self.edges.push([p, new]);
                self.edges.push([q, new]);
                self.lower(p);
                self.lower(q);
            }
            (Some(p), None) | (None, Some(p)) => {
                self.edges.push([p, new]);
                self.lower(p);
            }
            (None, None) => {}
        }
        new
    }
}

fn less(a: Option<usize>, b: Option<usize>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

fn simulate(x: &TauSeries, y: &TauSeries, cap: usize) -> Result<DualGraph> {
    let mut chart = Chart { u: x.clone(), w: y.clone(), du: None, dw: None };
    let mut builder = Builder { vertices: Vec::new(), edges: Vec::new() };
    for _ in 0..MAX_STEPS {
        let a = chart.u.order()?;
        let b = chart.w.order()?;
        if a.is_none() && b.is_none() {
            return Err(Error::InvalidCurve("parameterization is identically zero".into()));
        }
        if a == Some(0) || b == Some(0) {
            return Err(Error::InvalidCurve("branch does not pass through the origin".into()));
        }
        match (chart.du, chart.dw) {
            (Some(p), None) if a == Some(1) => return finish(builder, p),
            (None, Some(q)) if b == Some(1) => return finish(builder, q),
            _ => {}
        }
        let new = builder.blow_up(chart.du, chart.dw);
        if less(a, b) {
            chart.w = chart.w.div(&chart.u, cap)?;
            chart.du = Some(new);
        } else if less(b, a) {
            chart.u = chart.u.div(&chart.w, cap)?;
            chart.dw = Some(new);
        } else {
            let ratio = chart.w.div(&chart.u, cap)?;
            let c = ratio.coeff(0);
            chart.w = ratio.sub(&TauSeries::monomial(0, c));
            chart.du = Some(new);
            chart.dw = None;
        }
    }
    Err(Error::Synthesis(format!("no resolution after {MAX_STEPS} blowups")))
}

fn finish(builder: Builder, arrow_vertex: u32) -> Result<DualGraph> {
    DualGraph::new(1, builder.vertices, builder.edges, vec![Arrow { vertex: arrow_vertex, branch: 1 }])
        .map_err(|e| Error::Synthesis(e.to_string()))
}

/// Minimal embedded resolution graph of the branch `(x(τ), y(τ))`, found by
/// tracking the strict transform through successive point blowups.
pub fn resolve_branch(x: &TauSeries, y: &TauSeries, start_precision: usize) -> Result<DualGraph> {
    let mut cap = start_precision.max(8);
    loop {
        match simulate(x, y, cap) {
            Err(Error::Precision(_)) if cap < MAX_PRECISION => cap *= 2,
            other => return other,
        }
    }
}

/// The resolution graph of the branch with the given characteristic
/// exponents, checked against its semigroup data.
pub fn graph_from_char_exponents(ce: &CharExponents) -> Result<DualGraph> {
    let beta = ce.beta();
    let one = BigRational::one();
    let x = TauSeries::monomial(beta[0] as usize, one.clone());
    let y_terms: Vec<(usize, BigRational)> = beta[1..].iter().map(|&b| (b as usize, one.clone())).collect();
    let y = TauSeries::polynomial(&y_terms);
    let last = *beta.last().unwrap() as usize;
    let g = resolve_branch(&x, &y, 2 * (beta[0] as usize + last) + 32)?;

    let data = branch_data_from_char_exponents(ce)?;
    let table = solve_multiplicities(&g).map_err(|e| Error::Synthesis(e.to_string()))?;
    let mut dead: Vec<u64> = dead_end_totals(&g, &table).values().map(|&m| m as u64).collect();
    dead.sort_unstable();
    let mut gens = data.gens.clone();
    gens.sort_unstable();
    if dead != gens {
        return Err(Error::Synthesis(format!("dead ends carry {dead:?}, generators are {gens:?}")));
    }
    let chi = euler_smooth_parts(&g);
    let mut stars: Vec<u64> = Vec::new();
    for (s, v) in g.vertices().iter().enumerate() {
        let valence = g.degree(v.id) + g.arrow_count(v.id);
        if valence >= 3 {
            stars.push(table.total(s) as u64);
        } else if valence == 2 && chi[s] != 0 {
            return Err(Error::Synthesis(format!("vertex {} has nonzero Euler characteristic", v.id)));
        }
    }
    stars.sort_unstable();
    let mut expected = data.star.clone();
    expected.sort_unstable();
    if stars != expected {
        return Err(Error::Synthesis(format!("stars carry {stars:?}, expected {expected:?}")));
    }
    Ok(g)
}
