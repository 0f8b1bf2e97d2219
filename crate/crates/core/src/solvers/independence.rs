use crate::error::{check_limit, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::three_graph::ThreeGraph;
use crate::vertex_set::{low_mask, mask_iter, VertexSet};

/// Exact maximum independent set search.
pub trait Independence {
    /// A largest vertex set spanning no edge (graphs) or no triple (3-graphs).
    fn max_independent_set(&self, limits: &SearchLimits) -> Result<VertexSet>;
}

pub fn independence_number<G: Independence + ?Sized>(g: &G, limits: &SearchLimits) -> Result<usize> {
    Ok(g.max_independent_set(limits)?.len())
}

/// Vertices sorted by descending key, ties broken by lowest id.
fn order_by<F: Fn(usize) -> usize>(n: usize, key: F) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(b).cmp(&key(a)).then(a.cmp(&b)));
    order
}

impl Independence for Graph {
    fn max_independent_set(&self, limits: &SearchLimits) -> Result<VertexSet> {
        let n = self.vertex_count();
        check_limit("independence search", n, limits.mask_vertices())?;
        // Maximum clique in the complement, vertices relabelled by descending
        // complement degree.
        let order = order_by(n, |v| n - 1 - self.degree(v));
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut comp = vec![0u64; n];
        for (i, &v) in order.iter().enumerate() {
            let mut row = 0u64;
            for (j, &w) in order.iter().enumerate() {
                if i != j && !self.has_edge(v, w) {
                    row |= 1u64 << j;
                }
            }
            comp[i] = row;
        }
        let mut search = CliqueSearch {
            adj: &comp,
            best: 0,
            best_size: 0,
        };
        search.expand(0, 0, low_mask(n));
        Ok(VertexSet::from_ids(n, mask_iter(search.best).map(|i| order[i])))
    }
}

struct CliqueSearch<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
}

impl CliqueSearch<'_> {
    /// Greedy sequential colouring of `cand`; returns vertices with their
    /// colour numbers, non-decreasing in colour.
    fn colour(&self, cand: u64) -> Vec<(usize, u32)> {
        let mut out = Vec::with_capacity(cand.count_ones() as usize);
        let mut uncoloured = cand;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut q = uncoloured;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !(1u64 << v) & !self.adj[v];
                uncoloured &= !(1u64 << v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, clique: u64, size: u32, mut cand: u64) {
        if cand == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = clique;
            }
            return;
        }
        let coloured = self.colour(cand);
        for &(v, colour) in coloured.iter().rev() {
            if size + colour <= self.best_size {
                return;
            }
            let bit = 1u64 << v;
            self.expand(clique | bit, size + 1, cand & self.adj[v]);
            cand &= !bit;
        }
    }
}

impl Independence for ThreeGraph {
    fn max_independent_set(&self, limits: &SearchLimits) -> Result<VertexSet> {
        let n = self.vertex_count();
        check_limit("independence search", n, limits.mask_vertices())?;
        let order = order_by(n, |v| self.degree(v));
        let mut search = TripleFreeSearch {
            g: self,
            order: &order,
            best: 0,
            best_size: 0,
        };
        let all = order.iter().fold(0u64, |acc, &v| acc | 1u64 << v);
        search.run(0, 0, all, 0);
        Ok(VertexSet::from_mask(n, search.best))
    }
}

struct TripleFreeSearch<'a> {
    g: &'a ThreeGraph,
    order: &'a [usize],
    best: u64,
    best_size: u32,
}

impl TripleFreeSearch<'_> {
    fn run(&mut self, chosen: u64, size: u32, cand: u64, depth: usize) {
        if size + cand.count_ones() <= self.best_size {
            return;
        }
        if cand == 0 {
            self.best_size = size;
            self.best = chosen;
            return;
        }
        let mut depth = depth;
        while cand & (1u64 << self.order[depth]) == 0 {
            depth += 1;
        }
        let v = self.order[depth];
        let bit = 1u64 << v;
        let mut inc = cand & !bit;
        for u in mask_iter(chosen) {
            inc &= !self.g.pair_link_mask(u, v);
        }
        self.run(chosen | bit, size + 1, inc, depth + 1);
        self.run(chosen, size, cand & !bit, depth + 1);
    }
}
