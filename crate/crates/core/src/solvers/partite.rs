use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::three_graph::ThreeGraph;
use crate::vertex_set::{low_mask, mask_iter, VertexSet};

/// Disjoint parts of equal size `t` with no edge (or triple) meeting every part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartiteWitness {
    pub t: usize,
    pub parts: Vec<VertexSet>,
}

/// Exact multipartite independence: k = 2 for graphs, k = 3 for 3-graphs.
pub trait Multipartite {
    const PARTS: usize;

    /// A witness of maximum order.
    fn max_partite_set(&self, limits: &SearchLimits) -> Result<PartiteWitness>;
}

pub fn multipartite_independence<G: Multipartite + ?Sized>(g: &G, limits: &SearchLimits) -> Result<usize> {
    Ok(g.max_partite_set(limits)?.t)
}

fn lowest(mask: u64, count: usize) -> u64 {
    mask_iter(mask).take(count).fold(0, |acc, v| acc | 1u64 << v)
}

/// Two disjoint `t`-sets with no edge between them, if any exist.
pub fn find_bipartite_independent_set(g: &Graph, t: usize, limits: &SearchLimits) -> Result<Option<PartiteWitness>> {
    let n = g.vertex_count();
    check_limit("bipartite independence search", n, limits.mask_vertices())?;
    if t == 0 {
        return Ok(Some(PartiteWitness {
            t: 0,
            parts: vec![VertexSet::empty(n); 2],
        }));
    }
    let mut search = BisetSearch::new(g, Some(t));
    search.run();
    Ok(search.witness(n).filter(|w| w.t >= t))
}

impl Multipartite for Graph {
    const PARTS: usize = 2;

    fn max_partite_set(&self, limits: &SearchLimits) -> Result<PartiteWitness> {
        let n = self.vertex_count();
        check_limit("bipartite independence search", n, limits.mask_vertices())?;
        let mut search = BisetSearch::new(self, None);
        search.run();
        Ok(search.witness(n).unwrap_or(PartiteWitness {
            t: 0,
            parts: vec![VertexSet::empty(n); 2],
        }))
    }
}

/// Assigns vertices one at a time to `U`, `W` or neither. A vertex adjacent
/// to both sides is excluded without branching; the next vertex is the one
/// with most neighbours already placed.
struct BisetSearch {
    adj: Vec<u64>,
    rank: Vec<u32>,
    best: usize,
    best_pair: (u64, u64),
    target: Option<usize>,
    done: bool,
    full: u64,
}

impl BisetSearch {
    fn new(g: &Graph, target: Option<usize>) -> Self {
        let n = g.vertex_count();
        let adj = g.masks();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = (n - i) as u32;
        }
        BisetSearch {
            adj,
            rank,
            best: target.map_or(0, |t| t - 1),
            best_pair: (0, 0),
            target,
            done: false,
            full: low_mask(n),
        }
    }

    fn witness(&self, n: usize) -> Option<PartiteWitness> {
        (self.best_pair.0 != 0).then(|| PartiteWitness {
            t: self.best,
            parts: vec![
                VertexSet::from_mask(n, self.best_pair.0),
                VertexSet::from_mask(n, self.best_pair.1),
            ],
        })
    }

    fn run(&mut self) {
        self.split(0, 0, 0, 0, self.full);
    }

    fn pick(&self, placed: u64, free: u64) -> usize {
        mask_iter(free)
            .max_by_key(|&v| ((self.adj[v] & placed).count_ones(), self.rank[v]))
            .expect("free is nonempty")
    }

    fn split(&mut self, u: u64, w: u64, nu: u64, nw: u64, free: u64) {
        let free = free & !(nu & nw);
        let (su, sw) = (u.count_ones() as usize, w.count_ones() as usize);
        let value = su.min(sw);
        if value > self.best {
            self.best = value;
            self.best_pair = if u.trailing_zeros() < w.trailing_zeros() {
                (lowest(u, value), lowest(w, value))
            } else {
                (lowest(w, value), lowest(u, value))
            };
            if self.target.is_some_and(|t| value >= t) {
                self.done = true;
                return;
            }
        }
        let avail_u = (free & !nw).count_ones() as usize;
        let avail_w = (free & !nu).count_ones() as usize;
        let pool = (su + sw + free.count_ones() as usize) / 2;
        if (su + avail_u).min(sw + avail_w).min(pool) <= self.best || free == 0 {
            return;
        }
        let v = self.pick(u | w, free);
        let bit = 1u64 << v;
        let rest = free & !bit;
        let can_u = nw & bit == 0;
        let can_w = nu & bit == 0 && u != 0;
        let into_u = |s: &mut Self| s.split(u | bit, w, nu | s.adj[v], nw, rest);
        let into_w = |s: &mut Self| s.split(u, w | bit, nu, nw | s.adj[v], rest);
        if su <= sw {
            if can_u {
                into_u(self);
            }
            if can_w && !self.done {
                into_w(self);
            }
        } else {
            if can_w {
                into_w(self);
            }
            if can_u && !self.done {
                into_u(self);
            }
        }
        if !self.done {
            self.split(u, w, nu, nw, rest);
        }
    }
}

/// Three disjoint `t`-sets with no triple meeting all three, if any exist.
pub fn find_tripartite_independent_set(
    h: &ThreeGraph,
    t: usize,
    limits: &SearchLimits,
) -> Result<Option<PartiteWitness>> {
    let n = h.vertex_count();
    check_limit("tripartite independence search", n, limits.mask_vertices())?;
    if t == 0 {
        return Ok(Some(PartiteWitness {
            t: 0,
            parts: vec![VertexSet::empty(n); 3],
        }));
    }
    if 3 * t > n {
        return Ok(None);
    }
    // The lowest vertex of the first part fixes an independent subproblem.
    let found = (0..n).into_par_iter().find_map_first(|first| {
        let mut search = HoleSearch {
            h,
            n,
            t,
            parts: [1u64 << first, 0, 0],
            forbidden: [0; 3],
        };
        search.assign(first + 1).then_some(search.parts)
    });
    Ok(found.map(|parts| PartiteWitness {
        t,
        parts: parts.iter().map(|&m| VertexSet::from_mask(n, m)).collect(),
    }))
}

impl Multipartite for ThreeGraph {
    const PARTS: usize = 3;

    fn max_partite_set(&self, limits: &SearchLimits) -> Result<PartiteWitness> {
        let mut best = find_tripartite_independent_set(self, 0, limits)?.expect("t = 0");
        for t in 1..=self.vertex_count() / 3 {
            match find_tripartite_independent_set(self, t, limits)? {
                Some(w) => best = w,
                None => break,
            }
        }
        Ok(best)
    }
}

/// Assigns vertices in increasing order to parts 0, 1, 2 or to none; a part
/// may only open after the previous one, which fixes the part labelling.
struct HoleSearch<'a> {
    h: &'a ThreeGraph,
    n: usize,
    t: usize,
    parts: [u64; 3],
    forbidden: [u64; 3],
}

impl HoleSearch<'_> {
    fn feasible(&self, next: usize) -> bool {
        let remaining = low_mask(self.n) & !low_mask(next);
        let mut total_deficit = 0;
        for p in 0..3 {
            let deficit = self.t - self.parts[p].count_ones() as usize;
            if deficit > 0 && ((remaining & !self.forbidden[p]).count_ones() as usize) < deficit {
                return false;
            }
            total_deficit += deficit;
        }
        total_deficit <= self.n - next
    }

    fn assign(&mut self, v: usize) -> bool {
        if self.parts.iter().all(|p| p.count_ones() as usize == self.t) {
            return true;
        }
        if v == self.n || !self.feasible(v) {
            return false;
        }
        let bit = 1u64 << v;
        for p in 0..3 {
            if self.parts[p].count_ones() as usize == self.t || self.forbidden[p] & bit != 0 {
                continue;
            }
            if p > 0 && self.parts[p - 1] == 0 {
                break;
            }
            let (q, r) = ((p + 1) % 3, (p + 2) % 3);
            let saved = self.forbidden;
            for w in mask_iter(self.parts[q]) {
                self.forbidden[r] |= self.h.pair_link_mask(v, w);
            }
            for w in mask_iter(self.parts[r]) {
                self.forbidden[q] |= self.h.pair_link_mask(v, w);
            }
            self.parts[p] |= bit;
            if self.assign(v + 1) {
                return true;
            }
            self.parts[p] &= !bit;
            self.forbidden = saved;
        }
        self.assign(v + 1)
    }
}
