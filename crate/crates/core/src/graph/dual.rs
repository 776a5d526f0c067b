use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::series::{IntPolynomial, MultiIndex, ProductForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub self_int: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub vertex: u32,
    pub branch: usize,
}

/// The unvalidated wire form of a [`DualGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub r: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[u32; 2]>,
    pub arrows: Vec<Arrow>,
}

impl GraphSpec {
    pub fn build(self) -> Result<DualGraph> {
        DualGraph::new(self.r, self.vertices, self.edges, self.arrows)
    }
}

/// Dual graph of an embedded resolution: a weighted tree with arrows for
/// the strict transforms of the branches.
///
/// Construction validates the tree shape, the arrow labelling and negative
/// definiteness of the intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphSpec")]
pub struct DualGraph {
    r: usize,
    vertices: Vec<Vertex>,
    edges: Vec<[u32; 2]>,
    arrows: Vec<Arrow>,
}

impl TryFrom<GraphSpec> for DualGraph {
    type Error = Error;
    fn try_from(raw: GraphSpec) -> Result<Self> {
        raw.build()
    }
}

impl DualGraph {
    pub fn new(r: usize, vertices: Vec<Vertex>, edges: Vec<[u32; 2]>, arrows: Vec<Arrow>) -> Result<Self> {
        let g = Self::unchecked(r, vertices, edges, arrows);
        g.validate()?;
        Ok(g)
    }

    /// Builds without validation; used while a graph is under construction.
    pub(crate) fn unchecked(r: usize, vertices: Vec<Vertex>, mut edges: Vec<[u32; 2]>, mut arrows: Vec<Arrow>) -> Self {
        for e in &mut edges {
            if e[0] > e[1] {
                e.swap(0, 1);
            }
        }
        edges.sort();
        arrows.sort_by_key(|a| a.branch);
        DualGraph { r, vertices, edges, arrows }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    fn idx(&self, id: u32) -> usize {
        self.index_of(id).expect("validated vertex id")
    }

    pub fn degree(&self, id: u32) -> usize {
        self.edges.iter().filter(|e| e[0] == id || e[1] == id).count()
    }

    pub fn arrow_count(&self, id: u32) -> usize {
        self.arrows.iter().filter(|a| a.vertex == id).count()
    }

    pub fn neighbors(&self, id: u32) -> Vec<u32> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e[0] == id {
                    Some(e[1])
                } else if e[1] == id {
                    Some(e[0])
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn next_id(&self) -> u32 {
        self.vertices.iter().map(|v| v.id).max().map_or(1, |m| m + 1)
    }

    /// `A_{σσ} = E_σ²`, `A_{στ} = 1` for adjacent vertices.
    pub fn intersection_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.vertices.len();
        let mut a = vec![vec![BigInt::zero(); n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            a[i][i] = BigInt::from(v.self_int);
        }
        for e in &self.edges {
            let (i, j) = (self.idx(e[0]), self.idx(e[1]));
            a[i][j] = BigInt::one();
            a[j][i] = BigInt::one();
        }
        a
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedGraph(msg));
        if self.vertices.is_empty() {
            return bad("graph has no vertices".into());
        }
        let ids: BTreeSet<u32> = self.vertices.iter().map(|v| v.id).collect();
        if ids.len() != self.vertices.len() {
            return bad("duplicate vertex id".into());
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if e[0] == e[1] {
                return bad(format!("self-loop at vertex {}", e[0]));
            }
            if !ids.contains(&e[0]) || !ids.contains(&e[1]) {
                return bad(format!("edge {e:?} references an unknown vertex"));
            }
            if !seen.insert(*e) {
                return bad(format!("duplicate edge {e:?}"));
            }
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return bad(format!("{} vertices and {} edges do not form a tree", self.vertices.len(), self.edges.len()));
        }
        let start = self.vertices[0].id;
        let mut reached = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if reached.insert(w) {
                    stack.push(w);
                }
            }
        }
        if reached.len() != ids.len() {
            return bad("graph is not connected".into());
        }
        for a in &self.arrows {
            if !ids.contains(&a.vertex) {
                return bad(format!("arrow for branch {} at unknown vertex {}", a.branch, a.vertex));
            }
        }
        let labels: Vec<usize> = self.arrows.iter().map(|a| a.branch).collect();
        if labels != (1..=self.r).collect::<Vec<_>>() {
            return bad(format!("arrow labels {labels:?} are not exactly 1..={}", self.r));
        }
        let minors = linalg::leading_minors(&self.intersection_matrix());
        for (k, d) in minors.iter().enumerate() {
            let ok = if (k + 1) % 2 == 0 { d.is_positive() } else { d.is_negative() };
            if !ok {
                return bad(format!("intersection matrix is not negative definite: leading minor {} is {d}", k + 1));
            }
        }
        Ok(())
    }
}

/// Multiplicities `m_i^σ` of every branch along every exceptional curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityTable {
    /// Vertex ids in graph order.
    pub vertex_ids: Vec<u32>,
    /// `per_vertex[σ][i] = m_{i+1}^σ`.
    pub per_vertex: Vec<Vec<i64>>,
}

impl MultiplicityTable {
    pub fn vector(&self, sigma: usize) -> MultiIndex {
        MultiIndex::finite(&self.per_vertex[sigma])
    }

    pub fn total(&self, sigma: usize) -> i64 {
        self.per_vertex[sigma].iter().sum()
    }

    pub fn by_id(&self, id: u32) -> Option<&[i64]> {
        self.vertex_ids.iter().position(|&v| v == id).map(|i| self.per_vertex[i].as_slice())
    }
}

/// Solves `A·m^{(i)} = −e_{arrow(i)}` exactly for every branch and certifies
/// the solution is integral and positive with zero residual.
pub fn solve_multiplicities(g: &DualGraph) -> Result<MultiplicityTable> {
    let a = g.intersection_matrix();
    let n = a.len();
    let a_rat: Vec<Vec<BigRational>> =
        a.iter().map(|row| row.iter().cloned().map(BigRational::from_integer).collect()).collect();
    let mut per_vertex = vec![Vec::with_capacity(g.r()); n];
    for arrow in g.arrows() {
        let mut rhs = vec![BigRational::zero(); n];
        rhs[g.idx(arrow.vertex)] = -BigRational::one();
        let x = linalg::solve(&a_rat, &rhs)
            .ok_or_else(|| Error::MalformedGraph("intersection matrix is singular".into()))?;
        for (sigma, q) in x.iter().enumerate() {
            if !q.is_integer() {
                return Err(Error::MalformedGraph(format!(
                    "branch {}: non-integral multiplicity {q} at vertex {}",
                    arrow.branch, g.vertices[sigma].id
                )));
            }
            if !q.is_positive() {
                return Err(Error::MalformedGraph(format!(
                    "branch {}: non-positive multiplicity {q} at vertex {}",
                    arrow.branch, g.vertices[sigma].id
                )));
            }
            let m: i64 = q
                .to_integer()
                .try_into()
                .map_err(|_| Error::MalformedGraph(format!("multiplicity {q} does not fit in 64 bits")))?;
            per_vertex[sigma].push(m);
        }
    }
    let table = MultiplicityTable { vertex_ids: g.vertices.iter().map(|v| v.id).collect(), per_vertex };
    check_multiplicities(g, &table)?;
    Ok(table)
}

/// Recomputes every row of `A·m^{(i)} + e_{arrow(i)}` in integers.
pub fn check_multiplicities(g: &DualGraph, table: &MultiplicityTable) -> Result<()> {
    let a = g.intersection_matrix();
    for (i, arrow) in g.arrows().iter().enumerate() {
        for (row, a_row) in a.iter().enumerate() {
            let mut acc: BigInt = a_row.iter().zip(&table.per_vertex).map(|(x, m)| x * BigInt::from(m[i])).sum();
            if g.vertices[row].id == arrow.vertex {
                acc += 1;
            }
            if !acc.is_zero() {
                return Err(Error::MalformedGraph(format!(
                    "branch {}: row of vertex {} has residual {acc}",
                    arrow.branch, g.vertices[row].id
                )));
            }
        }
        if table.per_vertex.iter().any(|m| m[i] <= 0) {
            return Err(Error::MalformedGraph(format!("branch {}: non-positive multiplicity", arrow.branch)));
        }
    }
    Ok(())
}

/// `χ(E̊_σ) = 2 − valence − arrows`, in graph order.
pub fn euler_smooth_parts(g: &DualGraph) -> Vec<i64> {
    g.vertices.iter().map(|v| 2 - g.degree(v.id) as i64 - g.arrow_count(v.id) as i64).collect()
}

/// Number of essential points on each component: intersection points whose
/// side of the total transform contains a strict transform.
pub fn essential_points(g: &DualGraph) -> Vec<usize> {
    let arrows_below = |from: u32, start: u32| -> usize {
        let mut seen = BTreeSet::from([from, start]);
        let mut stack = vec![start];
        let mut count = g.arrow_count(start);
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if seen.insert(w) {
                    count += g.arrow_count(w);
                    stack.push(w);
                }
            }
        }
        count
    };
    g.vertices
        .iter()
        .map(|v| g.arrow_count(v.id) + g.neighbors(v.id).into_iter().filter(|&w| arrows_below(v.id, w) > 0).count())
        .collect()
}

/// `∏_σ (1 − t^{m^σ})^{−χ(E̊_σ)}` with total multiplicities.
pub fn acampo_zeta(g: &DualGraph) -> Result<ProductForm> {
    let table = solve_multiplicities(g)?;
    let chi = euler_smooth_parts(g);
    Ok(ProductForm::from_factors(1, chi.iter().enumerate().map(|(s, &c)| (MultiIndex::finite(&[table.total(s)]), -c))))
}

/// `∏_σ (1 − t̲^{m̲^σ})^{−χ(E̊_σ)}` in `r` variables.
pub fn multivariable_product(g: &DualGraph) -> Result<ProductForm> {
    let table = solve_multiplicities(g)?;
    let chi = euler_smooth_parts(g);
    Ok(ProductForm::from_factors(g.r(), chi.iter().enumerate().map(|(s, &c)| (table.vector(s), -c))))
}

/// The Alexander polynomial for `r > 1`; for `r = 1` the rational function
/// `Δ(t)/(1 − t)` is kept as a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alexander {
    Polynomial(IntPolynomial),
    Rational(ProductForm),
}

impl Alexander {
    pub fn polynomial(&self) -> Option<&IntPolynomial> {
        match self {
            Alexander::Polynomial(p) => Some(p),
            Alexander::Rational(_) => None,
        }
    }
}

pub fn alexander_polynomial(g: &DualGraph) -> Result<Alexander> {
    if g.r() == 0 {
        return Err(Error::Input("Alexander polynomial needs at least one branch".into()));
    }
    let pf = multivariable_product(g)?;
    if g.r() == 1 {
        return Ok(Alexander::Rational(pf));
    }
    let degree = pf.degree_balance().ok_or_else(|| Error::NonPolynomial("infinite exponent in product".into()))?;
    if degree.iter().any(|&d| d < 0) {
        return Err(Error::NonPolynomial(format!("negative degree balance {degree:?}")));
    }
    let delta = pf.expand(&degree)?.to_polynomial();
    // Exact certificate: the truncation times the denominator must be the
    // numerator, which proves the product is this polynomial.
    if &delta * &pf.denominator() != pf.numerator() {
        return Err(Error::NonPolynomial(format!("{pf} is not a polynomial")));
    }
    if delta.constant_term() != BigInt::one() || delta.has_negative_exponents() {
        return Err(Error::NonPolynomial(format!("{delta} is not normalized")));
    }
    Ok(Alexander::Polynomial(delta))
}

/// Vertices of valence one (edges plus arrows) and their total multiplicity.
pub fn dead_end_totals(g: &DualGraph, table: &MultiplicityTable) -> BTreeMap<u32, i64> {
    g.vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| g.degree(v.id) + g.arrow_count(v.id) == 1)
        .map(|(s, v)| (v.id, table.total(s)))
        .collect()
}
