//! Brute-force oracles that share no code with the library solvers.

#![allow(dead_code)]

use ramsey_forge::{Graph, ThreeGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(n, e).unwrap()
}

pub fn random_three_graph(n: usize, p: f64, rng: &mut impl Rng) -> ThreeGraph {
    let mut t = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if rng.gen::<f64>() < p {
                    t.push([a, b, c]);
                }
            }
        }
    }
    ThreeGraph::new(n, t).unwrap()
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub fn alpha(g: &Graph) -> usize {
    let n = g.vertex_count();
    let a = adjacency(g);
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|u| s >> u & 1 == 0 || (u + 1..n).all(|v| s >> v & 1 == 0 || !a[u][v])))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest `t` with disjoint `U`, `W` of order `t` and no `U`-`W` edge, over
/// all `3^n` side assignments.
pub fn alpha2(g: &Graph) -> usize {
    let n = g.vertex_count();
    let a = adjacency(g);
    let mut best = 0;
    let mut side = vec![0u8; n];
    loop {
        let u: Vec<usize> = (0..n).filter(|&v| side[v] == 1).collect();
        let w: Vec<usize> = (0..n).filter(|&v| side[v] == 2).collect();
        let t = u.len().min(w.len());
        if t > best && u.iter().all(|&x| w.iter().all(|&y| !a[x][y])) {
            best = t;
        }
        let mut i = 0;
        while i < n && side[i] == 2 {
            side[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
        side[i] += 1;
    }
}

pub fn alpha_three(h: &ThreeGraph) -> usize {
    let n = h.vertex_count();
    (0u32..1 << n)
        .filter(|&s| h.triples().iter().all(|t| t.iter().any(|&v| s >> v & 1 == 0)))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Number of maps `V(src) -> V(tgt)` sending edges to edges, where
/// `loops` makes every target vertex adjacent to itself.
pub fn hom_count(src: &Graph, tgt: &Graph, loops: bool) -> u64 {
    let (n, m) = (src.vertex_count(), tgt.vertex_count());
    let a = adjacency(tgt);
    let edges: Vec<_> = src.edges().collect();
    let mut f = vec![0usize; n];
    let mut count = 0;
    loop {
        if edges.iter().all(|&(u, v)| a[f[u]][f[v]] || (loops && f[u] == f[v])) {
            count += 1;
        }
        let mut i = 0;
        while i < n && f[i] + 1 == m {
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
        f[i] += 1;
    }
}

/// Injective copy of `p` in `h`, by trying every injection.
pub fn contains(p: &Graph, h: &Graph) -> bool {
    fn go(i: usize, p: &[Vec<bool>], h: &[Vec<bool>], used: &mut Vec<bool>, img: &mut Vec<usize>) -> bool {
        if i == p.len() {
            return true;
        }
        for x in 0..h.len() {
            if used[x] || (0..i).any(|j| p[i][j] && !h[x][img[j]]) {
                continue;
            }
            used[x] = true;
            img.push(x);
            if go(i + 1, p, h, used, img) {
                return true;
            }
            img.pop();
            used[x] = false;
        }
        false
    }
    let (pa, ha) = (adjacency(p), adjacency(h));
    go(0, &pa, &ha, &mut vec![false; h.vertex_count()], &mut Vec::new())
}

/// Shortest cycle through each edge, by deleting it and measuring distance.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let a = adjacency(g);
    let mut best: Option<usize> = None;
    for (s, t) in g.edges() {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if a[x][y] && !(x == s && y == t) && !(x == t && y == s) && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[t] != usize::MAX {
            best = Some(best.map_or(dist[t] + 1, |b: usize| b.min(dist[t] + 1)));
        }
    }
    best
}

/// Least odd `k` with a closed walk of length `k`.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let a = adjacency(g);
    let mut walk: Vec<Vec<bool>> = a.clone();
    for k in 1..=2 * n + 1 {
        if k % 2 == 1 && (0..n).any(|v| walk[v][v]) {
            return Some(k);
        }
        walk = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|x| walk[i][x] && a[x][j])).collect())
            .collect();
    }
    None
}

/// Triangle-free colourings of the six cross pairs on `I = {0}`,
/// `J = {1}`, `K = {2}`.
pub fn census_n1(palette: &Graph) -> usize {
    let m = palette.vertex_count();
    let a = adjacency(palette);
    let mut count = 0;
    for code in 0..m.pow(6) {
        let mut c = [0usize; 6];
        let mut x = code;
        for slot in c.iter_mut() {
            *slot = x % m;
            x /= m;
        }
        // (0,1) (0,2) (1,0) (1,2) (2,0) (2,1)
        if !(a[c[0]][c[1]] && a[c[2]][c[3]] && a[c[4]][c[5]]) {
            count += 1;
        }
    }
    count
}

/// All labelled graphs on `m` vertices.
pub fn all_graphs(m: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            Graph::from_edges(
                m,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap()
        })
        .collect()
}
