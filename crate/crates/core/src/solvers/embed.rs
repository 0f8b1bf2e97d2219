use crate::error::{check_limit, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::three_graph::ThreeGraph;
use crate::vertex_set::VertexSet;

/// Pattern vertices ordered by connections to already placed ones, then by
/// degree, then by lowest id.
fn placement_order(n: usize, degree: impl Fn(usize) -> usize, linked: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = order.iter().filter(|&&w| linked(v, w)).count();
                (back, degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// An injective edge-preserving map of `pattern` into `host`.
pub fn find_subgraph(pattern: &Graph, host: &Graph, limits: &SearchLimits) -> Result<Option<Vec<usize>>> {
    let k = pattern.vertex_count();
    check_limit("subgraph pattern", k, limits.pattern_vertices)?;
    if k > host.vertex_count() {
        return Ok(None);
    }
    let order = placement_order(k, |v| pattern.degree(v), |a, b| pattern.has_edge(a, b));
    let mut image = vec![usize::MAX; k];
    let mut used = VertexSet::empty(host.vertex_count());
    let found = place_graph(pattern, host, &order, 0, &mut image, &mut used);
    Ok(found.then_some(image))
}

fn place_graph(
    pattern: &Graph,
    host: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let mut cand = used.complement();
    for w in pattern.neighbors(v).iter() {
        if image[w] != usize::MAX {
            cand.intersect_with(host.neighbors(image[w]));
        }
    }
    let need = pattern.degree(v);
    for c in cand.iter() {
        if host.degree(c) < need {
            continue;
        }
        image[v] = c;
        used.insert(c);
        if place_graph(pattern, host, order, depth + 1, image, used) {
            return true;
        }
        used.remove(c);
    }
    image[v] = usize::MAX;
    false
}

pub fn contains_subgraph(pattern: &Graph, host: &Graph, limits: &SearchLimits) -> Result<bool> {
    Ok(find_subgraph(pattern, host, limits)?.is_some())
}

/// An injective map sending every triple of `h` to a triple of `host`.
pub fn find_copy(h: &ThreeGraph, host: &ThreeGraph, limits: &SearchLimits) -> Result<Option<Vec<usize>>> {
    let k = h.vertex_count();
    check_limit("sub-3-graph pattern", k, limits.pattern_vertices)?;
    if k > host.vertex_count() {
        return Ok(None);
    }
    let shares = |a: usize, b: usize| !h.pair_link(a, b).is_empty();
    let order = placement_order(k, |v| h.degree(v), shares);
    let mut position = vec![0; k];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Triples of `h` grouped by the step that places their last vertex.
    let mut closing: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for &[a, b, c] in h.triples() {
        let mut t = [a, b, c];
        t.sort_by_key(|&x| position[x]);
        closing[position[t[2]]].push((t[0], t[1]));
    }
    let host_degree: Vec<usize> = (0..host.vertex_count()).map(|v| host.degree(v)).collect();
    let mut state = CopySearch {
        h,
        host,
        order: &order,
        closing: &closing,
        host_degree: &host_degree,
        image: vec![usize::MAX; k],
        used: VertexSet::empty(host.vertex_count()),
    };
    Ok(state.place(0).then_some(state.image))
}

struct CopySearch<'a> {
    h: &'a ThreeGraph,
    host: &'a ThreeGraph,
    order: &'a [usize],
    closing: &'a [Vec<(usize, usize)>],
    host_degree: &'a [usize],
    image: Vec<usize>,
    used: VertexSet,
}

impl CopySearch<'_> {
    fn place(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let mut cand = self.used.complement();
        for &(a, b) in &self.closing[depth] {
            cand.intersect_with(&self.host.pair_link(self.image[a], self.image[b]));
        }
        let need = self.h.degree(v);
        for c in cand.iter() {
            if self.host_degree[c] < need {
                continue;
            }
            self.image[v] = c;
            self.used.insert(c);
            if self.place(depth + 1) {
                return true;
            }
            self.used.remove(c);
        }
        self.image[v] = usize::MAX;
        false
    }
}

pub fn contains_copy(h: &ThreeGraph, host: &ThreeGraph, limits: &SearchLimits) -> Result<bool> {
    Ok(find_copy(h, host, limits)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_copies() {
        let lim = SearchLimits::default();
        let single = ThreeGraph::new(3, [[0, 1, 2]]).unwrap();
        assert!(contains_copy(&single, &ThreeGraph::complete(4), &lim).unwrap());
        assert!(!contains_copy(&ThreeGraph::complete(4), &ThreeGraph::empty(10), &lim).unwrap());
        assert!(contains_copy(&ThreeGraph::k4_minus_edge(), &ThreeGraph::complete(5), &lim).unwrap());
        assert!(!contains_copy(&ThreeGraph::complete(4), &ThreeGraph::k4_minus_edge(), &lim).unwrap());
    }

    #[test]
    fn copy_witness_maps_triples() {
        let lim = SearchLimits::default();
        let h = ThreeGraph::k4_minus_edge();
        let host = ThreeGraph::complete(6);
        let f = find_copy(&h, &host, &lim).unwrap().unwrap();
        for &[a, b, c] in h.triples() {
            assert!(host.has_triple(f[a], f[b], f[c]));
        }
    }

    #[test]
    fn subgraphs() {
        let lim = SearchLimits::default();
        assert!(contains_subgraph(&Graph::cycle(5), &Graph::petersen(), &lim).unwrap());
        assert!(!contains_subgraph(&Graph::cycle(4), &Graph::petersen(), &lim).unwrap());
        assert!(!contains_subgraph(&Graph::cycle(3), &Graph::complete_bipartite(3, 3), &lim).unwrap());
        assert!(contains_subgraph(&Graph::empty(2), &Graph::empty(2), &lim).unwrap());
    }
}
