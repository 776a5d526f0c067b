use super::dual::{Arrow, DualGraph, Vertex};
use crate::error::{Error, Result};

fn lowered(g: &DualGraph, ids: &[u32]) -> Vec<Vertex> {
    g.vertices()
        .iter()
        .map(|v| Vertex { id: v.id, self_int: if ids.contains(&v.id) { v.self_int - 1 } else { v.self_int } })
        .collect()
}

fn require_vertex(g: &DualGraph, sigma: u32) -> Result<()> {
    match g.index_of(sigma) {
        Some(_) => Ok(()),
        None => Err(Error::Input(format!("no vertex {sigma}"))),
    }
}

/// Blow up a point of `E_σ` lying on no other component.
pub fn blowup_free_point(g: &DualGraph, sigma: u32) -> Result<DualGraph> {
    require_vertex(g, sigma)?;
    let new = g.next_id();
    let mut vertices = lowered(g, &[sigma]);
    vertices.push(Vertex { id: new, self_int: -1 });
    let mut edges = g.edges().to_vec();
    edges.push([sigma, new]);
    DualGraph::new(g.r(), vertices, edges, g.arrows().to_vec())
}

/// Blow up the intersection point of two adjacent components.
pub fn blowup_edge(g: &DualGraph, edge: [u32; 2]) -> Result<DualGraph> {
    let [a, b] = if edge[0] <= edge[1] { edge } else { [edge[1], edge[0]] };
    if !g.edges().contains(&[a, b]) {
        return Err(Error::Input(format!("no edge {edge:?}")));
    }
    let new = g.next_id();
    let mut vertices = lowered(g, &[a, b]);
    vertices.push(Vertex { id: new, self_int: -1 });
    let mut edges: Vec<[u32; 2]> = g.edges().iter().filter(|e| **e != [a, b]).copied().collect();
    edges.push([a, new]);
    edges.push([b, new]);
    DualGraph::new(g.r(), vertices, edges, g.arrows().to_vec())
}

/// Blow up the point where the strict transform of `branch` meets its
/// component; the arrow moves to the new curve.
pub fn blowup_arrow_point(g: &DualGraph, branch: usize) -> Result<DualGraph> {
    let sigma = g
        .arrows()
        .iter()
        .find(|a| a.branch == branch)
        .map(|a| a.vertex)
        .ok_or_else(|| Error::Input(format!("no arrow for branch {branch}")))?;
    let new = g.next_id();
    let mut vertices = lowered(g, &[sigma]);
    vertices.push(Vertex { id: new, self_int: -1 });
    let mut edges = g.edges().to_vec();
    edges.push([sigma, new]);
    let arrows =
        g.arrows().iter().map(|a| if a.branch == branch { Arrow { vertex: new, branch } } else { a.clone() }).collect();
    DualGraph::new(g.r(), vertices, edges, arrows)
}
