//! Derived graphs and vertex sets.

use crate::error::{check_limit, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::vertex_set::VertexSet;

/// Vertices with no neighbour in `u`; members of `u` qualify too.
pub fn non_neighborhood(g: &Graph, u: &VertexSet) -> VertexSet {
    let mut out = VertexSet::full(g.vertex_count());
    for v in u.iter() {
        out.difference_with(g.neighbors(v));
    }
    out
}

/// Index of the ordered pair `(x, y)` in a tensor square of an `m`-vertex graph.
pub fn tensor_index(m: usize, x: usize, y: usize) -> usize {
    x * m + y
}

/// Graph on ordered pairs where `(u1,u2) ~ (v1,v2)` iff `u1 ~ v1` and `u2 ~ v2`.
/// Pair `(x, y)` is vertex `x * m + y`.
pub fn tensor_square(a: &Graph, limits: &SearchLimits) -> Result<Graph> {
    let m = a.vertex_count();
    check_limit("tensor square", m * m, limits.tensor_vertices)?;
    let edges: Vec<(usize, usize)> = a.edges().collect();
    let mut out = Vec::with_capacity(2 * edges.len() * edges.len());
    for &(u1, v1) in &edges {
        for &(u2, v2) in &edges {
            out.push((tensor_index(m, u1, u2), tensor_index(m, v1, v2)));
            out.push((tensor_index(m, u1, v2), tensor_index(m, v1, u2)));
        }
    }
    Ok(Graph::from_edges(m * m, out).expect("tensor pairs are in range and loop free"))
}
