use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::Graph;

/// A cycle length, or `Infinite` when no cycle of the requested kind exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_finite(self) -> bool {
        matches!(self, Girth::Finite(_))
    }

    /// True when every cycle is longer than `len`.
    pub fn exceeds(self, len: usize) -> bool {
        match self {
            Girth::Finite(g) => g > len,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Girth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Len(usize),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Len(g) => Ok(Girth::Finite(g)),
            Raw::Word(w) if w == "infinite" => Ok(Girth::Infinite),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("bad girth {w:?}"))),
        }
    }
}

struct Bfs {
    dist: Vec<usize>,
    parent: Vec<usize>,
}

const UNSEEN: usize = usize::MAX;

fn bfs(g: &Graph, s: usize, mut on_edge: impl FnMut(&Bfs, usize, usize)) -> Bfs {
    let n = g.vertex_count();
    let mut b = Bfs {
        dist: vec![UNSEEN; n],
        parent: vec![UNSEEN; n],
    };
    b.dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u).iter() {
            if b.dist[w] == UNSEEN {
                b.dist[w] = b.dist[u] + 1;
                b.parent[w] = u;
                queue.push_back(w);
            } else if w != b.parent[u] {
                on_edge(&b, u, w);
            }
        }
    }
    b
}

fn path_to_root(b: &Bfs, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while b.parent[v] != UNSEEN {
        v = b.parent[v];
        path.push(v);
    }
    path
}

/// A shortest cycle as a vertex sequence, or `None` for forests.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for s in 0..g.vertex_count() {
        let bound = best.as_ref().map_or(usize::MAX, Vec::len);
        let mut local: Option<(usize, usize, usize)> = None;
        let b = bfs(g, s, |b, u, w| {
            let len = b.dist[u] + b.dist[w] + 1;
            if len < bound && local.is_none_or(|(l, ..)| len < l) {
                local = Some((len, u, w));
            }
        });
        if let Some((len, u, w)) = local {
            let mut cycle = path_to_root(&b, u);
            cycle.reverse();
            let mut back = path_to_root(&b, w);
            back.pop();
            cycle.extend(back);
            debug_assert_eq!(cycle.len(), len);
            best = Some(cycle);
        }
    }
    best
}

pub fn girth(g: &Graph) -> Girth {
    shortest_cycle(g).map_or(Girth::Infinite, |c| Girth::Finite(c.len()))
}

/// Length of a shortest odd cycle.
pub fn odd_girth(g: &Graph) -> Girth {
    let mut best = Girth::Infinite;
    for s in 0..g.vertex_count() {
        bfs(g, s, |b, u, w| {
            if b.dist[u] == b.dist[w] {
                best = best.min(Girth::Finite(2 * b.dist[u] + 1));
            }
        });
    }
    best
}

/// Proper 2-colouring test by breadth-first layering.
pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut side = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for w in g.neighbors(u).iter() {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}
