//! The 3-graph of adjacent triangles of a pair colouring.
//!
//! A colouring assigns a palette vertex to every ordered pair `(i, j)`,
//! `i != j`. The triple `i < j < k` is an edge when
//! `c(i,j) ~ c(i,k)`, `c(j,i) ~ c(j,k)` and `c(k,i) ~ c(k,j)` in the palette.

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aux_graph::{gnp_from, rng_for};
use crate::error::{check_limit, Error, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::logval::LogValue;
use crate::solvers::{find_subgraph, find_tripartite_independent_set};
use crate::three_graph::ThreeGraph;
use crate::vertex_set::VertexSet;

const DIAGONAL: u32 = u32::MAX;

/// Colours of all ordered pairs of `0..n` by vertices of a palette graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    n: usize,
    palette: Graph,
    values: Vec<u32>,
}

/// File form of a colouring: row-major `N * N` values, `-1` on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringTable {
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    pub values: Vec<i64>,
}

impl PairColoring {
    /// Colours pair `(i, j)` with `f(i, j)`, visiting pairs in row-major order.
    pub fn new(palette: Graph, n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let m = palette.vertex_count();
        if m == 0 {
            return Err(Error::Domain("palette has no vertices".into()));
        }
        let mut values = vec![DIAGONAL; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let c = f(i, j);
                    if c >= m {
                        return Err(Error::Invalid(format!("colour {c} of pair ({i},{j}) >= m = {m}")));
                    }
                    values[i * n + j] = c as u32;
                }
            }
        }
        Ok(PairColoring { n, palette, values })
    }

    pub fn from_table(palette: Graph, table: &ColoringTable) -> Result<Self> {
        let n = table.n;
        if table.m != palette.vertex_count() {
            return Err(Error::Invalid(format!(
                "colouring has m = {} but the palette has {} vertices",
                table.m,
                palette.vertex_count()
            )));
        }
        if table.values.len() != n * n {
            return Err(Error::Invalid(format!(
                "expected {} values, found {}",
                n * n,
                table.values.len()
            )));
        }
        for i in 0..n {
            if table.values[i * n + i] != -1 {
                return Err(Error::Invalid(format!("diagonal entry ({i},{i}) must be -1")));
            }
        }
        PairColoring::new(palette, n, |i, j| {
            let v = table.values[i * n + j];
            if v < 0 {
                usize::MAX
            } else {
                v as usize
            }
        })
    }

    pub fn table(&self) -> ColoringTable {
        ColoringTable {
            n: self.n,
            m: self.palette.vertex_count(),
            values: self
                .values
                .iter()
                .map(|&v| if v == DIAGONAL { -1 } else { v as i64 })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> &Graph {
        &self.palette
    }

    pub fn color(&self, i: usize, j: usize) -> usize {
        assert!(i != j, "diagonal pairs carry no colour");
        self.values[i * self.n + j] as usize
    }

    fn adjacent(&self, i: usize, j: usize, k: usize) -> bool {
        self.palette.has_edge(self.color(i, j), self.color(i, k))
    }
}

/// Uniform colouring of the ordered pairs, drawn in row-major order.
pub fn random_coloring(n: usize, palette: &Graph, seed: u64) -> Result<PairColoring> {
    let m = palette.vertex_count();
    let mut rng = rng_for(seed);
    PairColoring::new(palette.clone(), n, |_, _| rng.gen_range(0..m.max(1)))
}

/// Whether the three vertices, in any order, form an adjacent triangle.
pub fn is_adjacent_triangle(chi: &PairColoring, i: usize, j: usize, k: usize) -> bool {
    let mut t = [i, j, k];
    t.sort_unstable();
    let [i, j, k] = t;
    assert!(i != j && j != k, "triangle vertices must be distinct");
    chi.adjacent(i, j, k) && chi.adjacent(j, i, k) && chi.adjacent(k, i, j)
}

fn triples_where(n: usize, keep: impl Fn(usize, usize, usize) -> bool + Sync) -> Vec<[usize; 3]> {
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let keep = &keep;
            (i + 1..n).flat_map(move |j| (j + 1..n).filter_map(move |k| keep(i, j, k).then_some([i, j, k])))
        })
        .collect()
}

/// The 3-graph of adjacent triangles.
pub fn build_gamma(chi: &PairColoring) -> ThreeGraph {
    let triples = triples_where(chi.n, |i, j, k| {
        chi.adjacent(i, j, k) && chi.adjacent(j, i, k) && chi.adjacent(k, i, j)
    });
    ThreeGraph::from_sorted_unchecked(chi.n, triples)
}

/// The single-condition variant: `i < j < k` is an edge iff `c(i,j) ~ c(i,k)`.
pub fn build_gamma_cfs(chi: &PairColoring) -> ThreeGraph {
    let triples = triples_where(chi.n, |i, j, k| chi.adjacent(i, j, k));
    ThreeGraph::from_sorted_unchecked(chi.n, triples)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkCheck {
    pub link_free: bool,
    /// Vertex whose link contains the forbidden graph.
    pub vertex: Option<usize>,
    /// Images of the forbidden graph's vertices, as vertices of the 3-graph.
    pub embedding: Option<Vec<usize>>,
}

/// Whether no vertex link contains `forbidden` as a subgraph.
pub fn verify_link_free(gamma: &ThreeGraph, forbidden: &Graph, limits: &SearchLimits) -> Result<LinkCheck> {
    check_limit(
        "forbidden link pattern",
        forbidden.vertex_count(),
        limits.pattern_vertices,
    )?;
    let hit = (0..gamma.vertex_count())
        .into_par_iter()
        .map(|v| {
            let link = gamma.link_of_vertex(v);
            find_subgraph(forbidden, &link, limits)
                .map(|f| f.map(|f| (v, f.into_iter().map(|x| if x >= v { x + 1 } else { x }).collect())))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    match hit {
        Some(Err(e)) => Err(e),
        Some(Ok(Some((v, emb)))) => Ok(LinkCheck {
            link_free: false,
            vertex: Some(v),
            embedding: Some(emb),
        }),
        _ => Ok(LinkCheck {
            link_free: true,
            vertex: None,
            embedding: None,
        }),
    }
}

/// Three disjoint equal parts such that no triple meets all three.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleWitness {
    pub parts: [VertexSet; 3],
}

impl HoleWitness {
    pub fn order(&self) -> usize {
        self.parts[0].len()
    }

    /// Direct check over all triples of the 3-graph.
    pub fn certify(&self, gamma: &ThreeGraph) -> bool {
        let [a, b, c] = &self.parts;
        let n = a.len();
        if b.len() != n || c.len() != n || !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
            return false;
        }
        let part = |v: usize| [a, b, c].iter().position(|p| p.contains(v));
        gamma.triples().iter().all(|t| {
            let mut seen = [false; 3];
            for &v in t {
                if let Some(p) = part(v) {
                    seen[p] = true;
                }
            }
            !seen.iter().all(|&s| s)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HoleMode {
    Exhaustive,
    Heuristic,
    /// Exhaustive within the configured limit, heuristic above it.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HoleOutcome {
    Found {
        witness: HoleWitness,
        certified_by: HoleMode,
    },
    Absent,
    NotDecided {
        restarts: usize,
    },
}

pub const HEURISTIC_RESTARTS: usize = 500;

/// Looks for a hole of order `n`. `Absent` is only returned by exhaustive
/// search; every `Found` witness is certified before it is returned.
pub fn find_tripartite_hole(
    gamma: &ThreeGraph,
    n: usize,
    mode: HoleMode,
    seed: u64,
    limits: &SearchLimits,
) -> Result<HoleOutcome> {
    let big = gamma.vertex_count();
    let exhaustive = match mode {
        HoleMode::Exhaustive => {
            check_limit(
                "exhaustive hole search",
                big,
                limits.hole_exhaustive.min(limits.mask_vertices()),
            )?;
            true
        }
        HoleMode::Heuristic => false,
        HoleMode::Auto => big <= limits.hole_exhaustive.min(limits.mask_vertices()),
    };
    if exhaustive {
        return Ok(match find_tripartite_independent_set(gamma, n, limits)? {
            Some(w) => {
                let witness = HoleWitness {
                    parts: [w.parts[0].clone(), w.parts[1].clone(), w.parts[2].clone()],
                };
                debug_assert!(witness.certify(gamma));
                HoleOutcome::Found {
                    witness,
                    certified_by: HoleMode::Exhaustive,
                }
            }
            None => HoleOutcome::Absent,
        });
    }
    let found = (0..HEURISTIC_RESTARTS)
        .into_par_iter()
        .filter_map(|r| greedy_hole(gamma, n, seed.wrapping_add(r as u64)))
        .find_first(|w| w.certify(gamma));
    Ok(match found {
        Some(witness) => HoleOutcome::Found {
            witness,
            certified_by: HoleMode::Heuristic,
        },
        None => HoleOutcome::NotDecided {
            restarts: HEURISTIC_RESTARTS,
        },
    })
}

/// Random order; each vertex joins the smallest part it may still join.
fn greedy_hole(gamma: &ThreeGraph, n: usize, seed: u64) -> Option<HoleWitness> {
    use rand::seq::SliceRandom;
    let size = gamma.vertex_count();
    if 3 * n > size {
        return None;
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.shuffle(&mut rng_for(seed));
    let mut parts: [VertexSet; 3] = std::array::from_fn(|_| VertexSet::empty(size));
    let mut forbidden: [VertexSet; 3] = std::array::from_fn(|_| VertexSet::empty(size));
    for v in order {
        let target = (0..3)
            .filter(|&p| parts[p].len() < n && !forbidden[p].contains(v))
            .min_by_key(|&p| parts[p].len());
        let Some(p) = target else { continue };
        let (q, r) = ((p + 1) % 3, (p + 2) % 3);
        for w in parts[q].to_vec() {
            forbidden[r].union_with(&gamma.pair_link(v, w));
        }
        for w in parts[r].to_vec() {
            forbidden[q].union_with(&gamma.pair_link(v, w));
        }
        parts[p].insert(v);
        if parts.iter().all(|s| s.len() == n) {
            return Some(HoleWitness { parts });
        }
    }
    None
}

/// Density `1/27` of `K_{n,n,n}` relative to the cube of its order.
pub fn tripartite_density() -> Ratio<u64> {
    Ratio::new(1, 27)
}

/// `(1 - p^3)^(d v^3 / 2) + (2 e v^2 / (d m))^(d v^2 / 2)` for a 3-graph on
/// `v` vertices with `d v^3` edges.
pub fn fu_bound(m: usize, v: usize, p: f64, delta: Ratio<u64>) -> LogValue {
    let d = *delta.numer() as f64 / *delta.denom() as f64;
    let v = v as f64;
    let first = LogValue::from_ln((-(p * p * p)).ln_1p() * d * v * v * v / 2.0);
    let base = 2.0 * std::f64::consts::E * v * v / (d * m as f64);
    let second = LogValue::from_ln(base.ln() * d * v * v / 2.0);
    first + second
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuEstimate {
    pub m: usize,
    pub n: usize,
    pub p: f64,
    pub delta: String,
    pub trials: usize,
    pub hits: usize,
    pub estimate: f64,
    pub bound: LogValue,
    pub holds: bool,
}

/// Monte Carlo probability that the fixed ordered tripartition
/// `I = 0..n, J = n..2n, K = 2n..3n` spans no adjacent triangle meeting all
/// three parts, over fresh palettes `G(m, p)` and fresh colourings.
pub fn estimate_fu_probability(m: usize, p: f64, n: usize, trials: usize, seed: u64) -> Result<FuEstimate> {
    if m < 1 || n < 1 || trials == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "estimate needs m, n, trials >= 1 and p in [0,1]; got m={m}, n={n}, trials={trials}, p={p}"
        )));
    }
    let v = 3 * n;
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&trial| {
            let mut rng = rng_for(seed.wrapping_add(trial as u64));
            let palette = gnp_from(m, p, &mut rng);
            let chi = PairColoring::new(palette, v, |_, _| rng.gen_range(0..m)).expect("colours in range");
            !(0..n).any(|i| (n..2 * n).any(|j| (2 * n..3 * n).any(|k| is_adjacent_triangle(&chi, i, j, k))))
        })
        .count();
    let delta = tripartite_density();
    let bound = fu_bound(m, v, p, delta);
    let estimate = hits as f64 / trials as f64;
    Ok(FuEstimate {
        m,
        n,
        p,
        delta: delta.to_string(),
        trials,
        hits,
        estimate,
        bound,
        holds: LogValue::new(estimate)? <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_example() -> PairColoring {
        // c(i,j) = 0 when i < j, 1 otherwise, on three vertices.
        let chi = PairColoring::new(Graph::complete(2), 3, |i, j| usize::from(i > j)).unwrap();
        // Pairs around 0: (0,1)=0, (0,2)=0, not adjacent in K2.
        assert!(!is_adjacent_triangle(&chi, 0, 1, 2));
        chi
    }

    #[test]
    fn adjacent_triangle_definition() {
        k2_example();
        let values = [[9, 0, 1], [0, 9, 1], [0, 1, 9]];
        let chi = PairColoring::new(Graph::complete(2), 3, |i, j| values[i][j]).unwrap();
        assert!(is_adjacent_triangle(&chi, 0, 1, 2));
        assert!(is_adjacent_triangle(&chi, 2, 0, 1));
        assert_eq!(build_gamma(&chi).triple_count(), 1);
        let edgeless = PairColoring::new(Graph::empty(2), 3, |i, j| values[i][j]).unwrap();
        assert_eq!(build_gamma(&edgeless).triple_count(), 0);
        assert_eq!(build_gamma_cfs(&edgeless).triple_count(), 0);
    }

    #[test]
    fn gamma_inside_cfs() {
        let palette = Graph::cycle(5);
        for seed in 0..5 {
            let chi = random_coloring(12, &palette, seed).unwrap();
            let g = build_gamma(&chi);
            let cfs = build_gamma_cfs(&chi);
            assert!(g.triples().iter().all(|t| cfs.has_triple(t[0], t[1], t[2])));
        }
    }

    #[test]
    fn table_round_trip() {
        let chi = random_coloring(4, &Graph::cycle(5), 3).unwrap();
        let table = chi.table();
        assert_eq!(table.values[0], -1);
        assert_eq!(table.values.len(), 16);
        let back = PairColoring::from_table(Graph::cycle(5), &table).unwrap();
        assert_eq!(back, chi);
        assert!(PairColoring::from_table(Graph::cycle(4), &table).is_err());
        let single = random_coloring(5, &Graph::empty(1), 0).unwrap();
        assert!(single.table().values.iter().all(|&v| v <= 0));
    }

    #[test]
    fn link_checks() {
        let lim = SearchLimits::default();
        assert!(
            verify_link_free(&ThreeGraph::empty(6), &Graph::cycle(3), &lim)
                .unwrap()
                .link_free
        );
        let k4 = verify_link_free(&ThreeGraph::complete(4), &Graph::cycle(3), &lim).unwrap();
        assert!(!k4.link_free);
        let (v, emb) = (k4.vertex.unwrap(), k4.embedding.unwrap());
        assert!(!emb.contains(&v));
    }

    #[test]
    fn holes() {
        let lim = SearchLimits::default();
        let found = find_tripartite_hole(&ThreeGraph::empty(6), 2, HoleMode::Exhaustive, 0, &lim).unwrap();
        assert!(matches!(found, HoleOutcome::Found { .. }));
        let none = find_tripartite_hole(&ThreeGraph::complete(5), 1, HoleMode::Auto, 0, &lim).unwrap();
        assert_eq!(none, HoleOutcome::Absent);
        let heur = find_tripartite_hole(&ThreeGraph::empty(40), 5, HoleMode::Auto, 0, &lim).unwrap();
        let HoleOutcome::Found { witness, certified_by } = heur else {
            panic!()
        };
        assert_eq!(certified_by, HoleMode::Heuristic);
        assert!(witness.certify(&ThreeGraph::empty(40)));
        let big = find_tripartite_hole(&ThreeGraph::complete(30), 1, HoleMode::Auto, 0, &lim).unwrap();
        assert!(matches!(big, HoleOutcome::NotDecided { .. }));
        assert!(find_tripartite_hole(&ThreeGraph::empty(30), 1, HoleMode::Exhaustive, 0, &lim).is_err());
    }

    #[test]
    fn fu_bound_edge_case() {
        // p = 0: the first term is exactly 1.
        let b = fu_bound(6, 6, 0.0, tripartite_density());
        assert!(b.value() > 1.0);
        let e = estimate_fu_probability(6, 0.0, 1, 50, 0).unwrap();
        assert_eq!(e.estimate, 1.0);
        assert!(e.holds);
    }
}
