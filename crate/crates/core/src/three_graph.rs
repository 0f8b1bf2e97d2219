//! 3-uniform hypergraphs: a sorted triple list plus "link of a pair" rows.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A 3-graph on `0..n`. Triples are stored sorted and deduplicated; for every
/// ordered pair `(a, b)` a bitset row holds the vertices `c` with `{a,b,c}`
/// a triple.
#[derive(Clone, PartialEq, Eq)]
pub struct ThreeGraph {
    n: usize,
    triples: Vec<[usize; 3]>,
    words: usize,
    links: Vec<u64>,
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

impl ThreeGraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            triples: Vec::new(),
            words,
            links: vec![0; n * n * words],
        }
    }

    pub fn new<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let mut sorted = Vec::new();
        for [a, b, c] in triples {
            if a >= n || b >= n || c >= n {
                return Err(Error::Invalid(format!("triple {{{a},{b},{c}}} outside 0..{n}")));
            }
            if a == b || b == c || a == c {
                return Err(Error::Invalid(format!("triple {{{a},{b},{c}}} repeats a vertex")));
            }
            sorted.push(sorted3(a, b, c));
        }
        Ok(Self::from_sorted_unchecked(n, sorted))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, mut triples: Vec<[usize; 3]>) -> Self {
        triples.sort_unstable();
        triples.dedup();
        let mut g = Self::empty(n);
        for &[a, b, c] in &triples {
            g.set_link(a, b, c);
            g.set_link(a, c, b);
            g.set_link(b, c, a);
        }
        g.triples = triples;
        g
    }

    fn set_link(&mut self, a: usize, b: usize, c: usize) {
        let w = self.words;
        for (x, y) in [(a, b), (b, a)] {
            let base = (x * self.n + y) * w;
            self.links[base + c / 64] |= 1u64 << (c % 64);
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triples.push([a, b, c]);
                }
            }
        }
        Self::from_sorted_unchecked(n, triples)
    }

    /// `K_4^(3)` minus one triple: vertex 3 lies in all three remaining triples.
    pub fn k4_minus_edge() -> Self {
        Self::new(4, [[0, 1, 3], [0, 2, 3], [1, 2, 3]]).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn has_triple(&self, a: usize, b: usize, c: usize) -> bool {
        if a >= self.n || b >= self.n || c >= self.n || a == b {
            return false;
        }
        let base = (a * self.n + b) * self.words;
        self.links[base + c / 64] >> (c % 64) & 1 == 1
    }

    /// Vertices completing `{a, b}` to a triple.
    pub fn pair_link(&self, a: usize, b: usize) -> VertexSet {
        let base = (a * self.n + b) * self.words;
        let row = &self.links[base..base + self.words];
        VertexSet::from_ids(self.n, (0..self.n).filter(|&c| row[c / 64] >> (c % 64) & 1 == 1))
    }

    /// Pair link as a word; only valid for at most 64 vertices.
    pub(crate) fn pair_link_mask(&self, a: usize, b: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.links[(a * self.n + b) * self.words]
    }

    /// Number of triples containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.triples.iter().filter(|t| t.contains(&v)).count()
    }

    pub fn complement(&self) -> ThreeGraph {
        let mut triples = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    if !self.has_triple(a, b, c) {
                        triples.push([a, b, c]);
                    }
                }
            }
        }
        Self::from_sorted_unchecked(self.n, triples)
    }

    /// Sub-3-graph induced on `keep`, relabelled so that `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> ThreeGraph {
        let mut triples = Vec::new();
        for a in 0..keep.len() {
            for b in a + 1..keep.len() {
                for c in b + 1..keep.len() {
                    if self.has_triple(keep[a], keep[b], keep[c]) {
                        triples.push([a, b, c]);
                    }
                }
            }
        }
        Self::from_sorted_unchecked(keep.len(), triples)
    }

    /// Link of `v`: the graph on the other `n - 1` vertices (ids above `v`
    /// shift down by one) where `{a, b}` is an edge iff `{v, a, b}` is a triple.
    pub fn link_of_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n, "vertex {v} outside 0..{}", self.n);
        let relabel = |x: usize| if x < v { x } else { x - 1 };
        let edges = self.triples.iter().filter(|t| t.contains(&v)).map(|t| {
            let mut rest = t.iter().copied().filter(|&x| x != v);
            let a = rest.next().expect("triple has three vertices");
            let b = rest.next().expect("triple has three vertices");
            (relabel(a), relabel(b))
        });
        Graph::from_edges(self.n - 1, edges).expect("links are simple graphs")
    }

    /// Link hypergraph `L_G`: the apex is the new vertex `g.vertex_count()`.
    pub fn link_hypergraph(g: &Graph) -> ThreeGraph {
        let apex = g.vertex_count();
        Self::from_sorted_unchecked(apex + 1, g.edges().map(|(u, v)| [u, v, apex]).collect())
    }

    /// `H(v, t)`: adds `t - 1` independent copies of `v` as vertices
    /// `n..n+t-1`, each carrying the triples of `v`.
    pub fn blowup_vertex(&self, v: usize, t: usize) -> ThreeGraph {
        assert!(v < self.n && t >= 1, "blowup needs a vertex in range and t >= 1");
        let copies: Vec<usize> = (self.n..self.n + t - 1).collect();
        let mut triples = self.triples.clone();
        triples.extend(self.copied_triples(v, &copies));
        Self::from_sorted_unchecked(self.n + t - 1, triples)
    }

    /// `H(v, F)`: vertex 0 of `f` is identified with `v`; vertices `1..|F|` of
    /// `f` become new copies of `v` (ids `n..`), each carrying the triples of
    /// `v`, and the class `{v} ∪ copies` induces `f`.
    pub fn blowup_with(&self, v: usize, f: &ThreeGraph) -> ThreeGraph {
        assert!(
            v < self.n && f.n >= 1,
            "blowup needs a vertex in range and a nonempty F"
        );
        let class: Vec<usize> = std::iter::once(v).chain(self.n..self.n + f.n - 1).collect();
        let mut triples = self.triples.clone();
        triples.extend(self.copied_triples(v, &class[1..]));
        triples.extend(f.triples.iter().map(|&[a, b, c]| sorted3(class[a], class[b], class[c])));
        Self::from_sorted_unchecked(self.n + f.n - 1, triples)
    }

    fn copied_triples<'a>(&'a self, v: usize, copies: &'a [usize]) -> impl Iterator<Item = [usize; 3]> + 'a {
        self.triples.iter().filter(move |t| t.contains(&v)).flat_map(move |t| {
            copies.iter().map(move |&c| {
                let mut rest = t.iter().copied().filter(|&x| x != v);
                let a = rest.next().expect("three vertices");
                let b = rest.next().expect("three vertices");
                sorted3(a, b, c)
            })
        })
    }
}

impl std::fmt::Debug for ThreeGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ThreeGraph")
            .field("n", &self.n)
            .field("triples", &self.triples)
            .finish()
    }
}

/// `{"n": int, "triples": [[u,v,w],...]}`, each triple ascending, list sorted.
#[derive(Serialize, Deserialize)]
struct ThreeGraphRepr {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl Serialize for ThreeGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ThreeGraphRepr {
            n: self.n,
            triples: self.triples.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ThreeGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ThreeGraphRepr::deserialize(deserializer)?;
        ThreeGraph::new(repr.n, repr.triples).map_err(serde::de::Error::custom)
    }
}
