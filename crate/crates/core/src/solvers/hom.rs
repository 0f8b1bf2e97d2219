use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{check_limit, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::vertex_set::VertexSet;

/// Adjacency rows of a homomorphism target.
struct Target {
    rows: Vec<VertexSet>,
}

impl Target {
    fn of(g: &Graph) -> Self {
        Target {
            rows: (0..g.vertex_count()).map(|v| g.neighbors(v).clone()).collect(),
        }
    }

    /// Complement with a loop at every vertex.
    fn reflexive_complement(g: &Graph) -> Self {
        Target {
            rows: (0..g.vertex_count())
                .map(|v| {
                    let mut row = g.neighbors(v).complement();
                    row.insert(v);
                    row
                })
                .collect(),
        }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

/// Source vertices ordered so that each one, where possible, has an earlier
/// neighbour; inside a component the most connected vertex goes first.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = g.neighbors(v).iter().filter(|&w| placed[w]).count();
                (back, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

struct HomSearch<'a> {
    source: &'a Graph,
    target: &'a Target,
    order: Vec<usize>,
    image: Vec<usize>,
}

impl HomSearch<'_> {
    fn candidates(&self, depth: usize) -> VertexSet {
        let v = self.order[depth];
        let mut cand = VertexSet::full(self.target.len());
        for w in self.source.neighbors(v).iter() {
            if self.image[w] != usize::MAX {
                cand.intersect_with(&self.target.rows[self.image[w]]);
            }
        }
        cand
    }

    fn exists(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for c in self.candidates(depth).iter() {
            self.image[v] = c;
            if self.exists(depth + 1) {
                return true;
            }
        }
        self.image[v] = usize::MAX;
        false
    }

    fn count(&mut self, depth: usize) -> BigUint {
        if depth == self.order.len() {
            return BigUint::one();
        }
        let v = self.order[depth];
        let mut total = BigUint::zero();
        for c in self.candidates(depth).iter() {
            self.image[v] = c;
            total += self.count(depth + 1);
        }
        self.image[v] = usize::MAX;
        total
    }
}

fn search<'a>(source: &'a Graph, target: &'a Target) -> HomSearch<'a> {
    HomSearch {
        source,
        target,
        order: search_order(source),
        image: vec![usize::MAX; source.vertex_count()],
    }
}

/// An edge-preserving map `source -> target`, if one exists.
pub fn find_homomorphism(source: &Graph, target: &Graph, limits: &SearchLimits) -> Result<Option<Vec<usize>>> {
    check_limit("homomorphism source", source.vertex_count(), limits.hom_source)?;
    let t = Target::of(target);
    let mut s = search(source, &t);
    Ok(s.exists(0).then_some(s.image))
}

pub fn hom_exists(source: &Graph, target: &Graph, limits: &SearchLimits) -> Result<bool> {
    Ok(find_homomorphism(source, target, limits)?.is_some())
}

fn count_components(source: &Graph, target: &Target) -> BigUint {
    let mut seen = vec![false; source.vertex_count()];
    let mut total = BigUint::one();
    for s in 0..source.vertex_count() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for w in source.neighbors(comp[i]).iter() {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        let part = source.induced(&comp);
        total *= search(&part, target).count(0);
        if total.is_zero() {
            break;
        }
    }
    total
}

/// Number of edge-preserving maps `source -> target`.
pub fn count_homomorphisms(source: &Graph, target: &Graph, limits: &SearchLimits) -> Result<BigUint> {
    check_limit(
        "homomorphism count source",
        source.vertex_count(),
        limits.hom_count_source,
    )?;
    Ok(count_components(source, &Target::of(target)))
}

/// Homomorphisms into the complement of `a` with a loop on every vertex, so
/// adjacent source vertices may share an image.
pub fn count_homomorphisms_into_complement(source: &Graph, a: &Graph, limits: &SearchLimits) -> Result<BigUint> {
    check_limit(
        "homomorphism count source",
        source.vertex_count(),
        limits.hom_count_source,
    )?;
    Ok(count_components(source, &Target::reflexive_complement(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn existence() {
        let lim = SearchLimits::default();
        assert!(hom_exists(&Graph::cycle(5), &Graph::cycle(3), &lim).unwrap());
        assert!(!hom_exists(&Graph::cycle(3), &Graph::cycle(5), &lim).unwrap());
        assert!(!hom_exists(&Graph::path(2), &Graph::empty(1), &lim).unwrap());
        assert!(hom_exists(&Graph::petersen(), &Graph::complete(3), &lim).unwrap());
        assert!(!hom_exists(&Graph::petersen(), &Graph::complete(2), &lim).unwrap());
    }

    #[test]
    fn witness_preserves_edges() {
        let lim = SearchLimits::default();
        let (s, t) = (Graph::petersen(), Graph::complete(3));
        let f = find_homomorphism(&s, &t, &lim).unwrap().unwrap();
        assert!(s.edges().all(|(u, v)| t.has_edge(f[u], f[v])));
    }

    #[test]
    fn counts() {
        let lim = SearchLimits::default();
        let c = |s: &Graph, t: &Graph| count_homomorphisms(s, t, &lim).unwrap();
        assert_eq!(c(&Graph::cycle(5), &Graph::complete(3)), BigUint::from(30u32));
        assert_eq!(c(&Graph::empty(4), &Graph::empty(3)), BigUint::from(81u32));
        assert_eq!(c(&Graph::path(2), &Graph::petersen()), BigUint::from(30u32));
        assert_eq!(c(&Graph::empty(0), &Graph::empty(0)), BigUint::one());
    }

    #[test]
    fn reflexive_complement_counts() {
        let lim = SearchLimits::default();
        // Edgeless target: the reflexive complement is complete with loops.
        let n = count_homomorphisms_into_complement(&Graph::cycle(4), &Graph::empty(3), &lim);
        assert_eq!(n.unwrap(), BigUint::from(81u32));
        // K2: the reflexive complement is two loops, so each component is constant.
        let n = count_homomorphisms_into_complement(&Graph::path(3), &Graph::complete(2), &lim);
        assert_eq!(n.unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn source_limit() {
        let lim = SearchLimits::default();
        assert!(hom_exists(&Graph::empty(17), &Graph::empty(1), &lim).is_err());
    }
}
