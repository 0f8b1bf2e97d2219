//! Auxiliary graphs of large odd girth whose small vertex sets have small
//! common non-neighbourhoods, built by deleting vertices from `G(2m, p)`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Error, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::ops::{non_neighborhood, tensor_square};
use crate::solvers::{
    find_bipartite_independent_set, girth, multipartite_independence, odd_girth, shortest_cycle, Girth,
};
use crate::vertex_set::VertexSet;

pub const DEFAULT_ATTEMPTS: usize = 100;
pub const PROPERTY_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxParams {
    pub g: usize,
    pub m: usize,
    pub t: usize,
    pub p: f64,
    pub seed: u64,
    pub attempts: usize,
}

/// `(4m)^(-1 + 1/g)`.
pub fn default_p(g: usize, m: usize) -> f64 {
    (4.0 * m as f64).powf(-1.0 + 1.0 / g as f64)
}

/// `ceil(m^(1 - 1/(3g)) / 16)`.
pub fn default_t(g: usize, m: usize) -> usize {
    ((m as f64).powf(1.0 - 1.0 / (3.0 * g as f64)) / 16.0).ceil() as usize
}

/// Size threshold `m^(e - 1/(3g))` used by the non-neighbourhood properties.
pub fn property_threshold(g: usize, m: usize, e: f64) -> f64 {
    (m as f64).powf(e - 1.0 / (3.0 * g as f64))
}

impl AuxParams {
    pub fn new(g: usize, m: usize, seed: u64) -> Result<Self> {
        let params = AuxParams {
            g,
            m,
            t: default_t(g, m),
            p: default_p(g, m),
            seed,
            attempts: DEFAULT_ATTEMPTS,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.g < 3 {
            return Err(Error::Domain(format!("odd-girth target g = {} < 3", self.g)));
        }
        if self.m < 2 {
            return Err(Error::Domain(format!("order m = {} < 2", self.m)));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::Domain(format!("edge probability p = {} outside (0,1)", self.p)));
        }
        if self.t == 0 || self.attempts == 0 {
            return Err(Error::Domain("t and attempts must be positive".into()));
        }
        Ok(())
    }
}

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)`: pairs visited in lexicographic order, one uniform draw each.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Graph {
    gnp_from(n, p, &mut rng_for(seed))
}

pub(crate) fn gnp_from(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("sampled pairs are valid")
}

/// A graph left after vertex deletions, with the surviving original ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pruned {
    pub graph: Graph,
    pub kept: Vec<usize>,
    pub deleted: Vec<usize>,
}

impl Pruned {
    fn start(g: &Graph) -> Self {
        Pruned {
            graph: g.clone(),
            kept: (0..g.vertex_count()).collect(),
            deleted: Vec::new(),
        }
    }

    /// Deletes the vertex with current label `v`.
    fn delete(&mut self, original: &Graph, v: usize) {
        self.deleted.push(self.kept.remove(v));
        self.graph = original.induced(&self.kept);
    }
}

/// Deletes the lowest vertex of a shortest cycle until the girth exceeds `max_len`.
pub fn destroy_short_cycles(g: &Graph, max_len: usize) -> Pruned {
    let mut state = Pruned::start(g);
    while let Some(cycle) = shortest_cycle(&state.graph).filter(|c| c.len() <= max_len) {
        let v = *cycle.iter().min().unwrap();
        state.delete(g, v);
    }
    state
}

/// Deletes the lowest vertex of a bipartite independent set of order `t`
/// until none remains.
pub fn destroy_bipartite_independent_sets(g: &Graph, t: usize, limits: &SearchLimits) -> Result<Pruned> {
    destroy_bisets_capped(g, t, usize::MAX, limits).map(|(p, _)| p)
}

/// As [`destroy_bipartite_independent_sets`] but stops after `cap` deletions;
/// the flag reports whether `alpha_2 < t` was reached.
fn destroy_bisets_capped(g: &Graph, t: usize, cap: usize, limits: &SearchLimits) -> Result<(Pruned, bool)> {
    if t == 0 {
        return Err(Error::Domain(
            "bipartite independent set order t must be positive".into(),
        ));
    }
    let mut state = Pruned::start(g);
    loop {
        let Some(w) = find_bipartite_independent_set(&state.graph, t, limits)? else {
            return Ok((state, true));
        };
        if state.deleted.len() == cap {
            return Ok((state, false));
        }
        let v = w.parts.iter().filter_map(VertexSet::first).min().unwrap();
        state.delete(g, v);
    }
}

/// How a property was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: usize },
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub odd_girth: Girth,
    pub property1_ok: bool,
    pub property2_ok: bool,
    pub property2_mode: CheckMode,
    pub property3_ok: bool,
    pub property3_mode: CheckMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxCertificate {
    pub girth: Girth,
    pub girth_ok: bool,
    pub alpha2: usize,
    pub t: usize,
    /// Whether the deletion phase reached `alpha2 < t` before the order fell to `m`.
    pub alpha2_below_t: bool,
    /// `log10` of the colouring order `m^6` that this `m` corresponds to.
    pub log10_implied_order: f64,
    pub deletions_cycles: usize,
    pub deletions_bisets: usize,
    pub truncated: usize,
    pub attempt: usize,
    pub seed: u64,
    pub kept: Vec<usize>,
    #[serde(flatten)]
    pub properties: PropertyReport,
}

impl AuxCertificate {
    pub fn property2_ok(&self) -> bool {
        self.properties.property2_ok
    }

    pub fn property3_ok(&self) -> bool {
        self.properties.property3_ok
    }
}

/// Checks that every `ceil(tau)`-subset `U` of `g` has `|N(U)| < tau`, where
/// `N` is the common non-neighbourhood. Larger sets have smaller
/// non-neighbourhoods, so this covers every `|U| >= tau`.
fn small_non_neighbourhoods(g: &Graph, tau: f64, exhaustive_up_to: usize, rng: &mut ChaCha8Rng) -> (bool, CheckMode) {
    let n = g.vertex_count();
    let size = tau.ceil().max(0.0) as usize;
    if size > n {
        return (true, CheckMode::Vacuous);
    }
    let ok = |u: &VertexSet| (non_neighborhood(g, u).len() as f64) < tau;
    if n <= exhaustive_up_to {
        let mut all = true;
        for_each_subset(n, size, |ids| {
            all &= ok(&VertexSet::from_ids(n, ids.iter().copied()));
            all
        });
        (all, CheckMode::Exhaustive)
    } else {
        let all = (0..PROPERTY_SAMPLES).all(|_| {
            let ids = sample(rng, n, size);
            ok(&VertexSet::from_ids(n, ids))
        });
        (
            all,
            CheckMode::Sampled {
                samples: PROPERTY_SAMPLES,
            },
        )
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns false.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut ids: Vec<usize> = (0..k).collect();
    loop {
        if !f(&ids) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| ids[i] < n - k + i) else {
            return;
        };
        ids[i] += 1;
        for j in i + 1..k {
            ids[j] = ids[j - 1] + 1;
        }
    }
}

/// Checks the three properties used downstream: odd girth above `g`, and
/// small common non-neighbourhoods in `a` and in its tensor square.
pub fn verify_properties(a: &Graph, g: usize, seed: u64, limits: &SearchLimits) -> Result<PropertyReport> {
    let m = a.vertex_count();
    let mut rng = rng_for(seed);
    let og = odd_girth(a);
    let (p2, mode2) = small_non_neighbourhoods(a, property_threshold(g, m, 1.0), 16, &mut rng);
    let sq = tensor_square(a, limits)?;
    let (p3, mode3) = small_non_neighbourhoods(&sq, property_threshold(g, m, 2.0), 16, &mut rng);
    Ok(PropertyReport {
        odd_girth: og,
        property1_ok: og.exceeds(g),
        property2_ok: p2,
        property2_mode: mode2,
        property3_ok: p3,
        property3_mode: mode3,
    })
}

struct Attempt {
    graph: Graph,
    cert: AuxCertificate,
}

fn attempt(params: &AuxParams, index: usize, limits: &SearchLimits) -> Result<Option<Attempt>> {
    let m = params.m;
    let seed = params.seed.wrapping_add(index as u64);
    let sampled = sample_gnp(2 * m, params.p, seed);
    let cycles = destroy_short_cycles(&sampled, params.g);
    let survivors = cycles.kept.len();
    if survivors < m {
        return Ok(None);
    }
    let (bisets, below_t) = destroy_bisets_capped(&cycles.graph, params.t, survivors - m, limits)?;
    let mut kept: Vec<usize> = bisets.kept.iter().map(|&v| cycles.kept[v]).collect();
    let truncated = kept.len() - m;
    kept.truncate(m);
    let graph = sampled.induced(&kept);
    let alpha2 = multipartite_independence(&graph, limits)?;
    let gi = girth(&graph);
    let properties = verify_properties(&graph, params.g, seed, limits)?;
    let cert = AuxCertificate {
        girth: gi,
        girth_ok: gi.exceeds(params.g),
        alpha2,
        t: params.t,
        alpha2_below_t: below_t && alpha2 < params.t,
        log10_implied_order: 6.0 * (params.m as f64).log10(),
        deletions_cycles: cycles.deleted.len(),
        deletions_bisets: bisets.deleted.len(),
        truncated,
        attempt: index,
        seed,
        kept,
        properties,
    };
    Ok(Some(Attempt { graph, cert }))
}

/// Samples `G(2m, p)`, removes short cycles and then bipartite independent
/// sets of order `t` while more than `m` vertices remain, and keeps the `m`
/// lowest surviving ids. Attempts use seeds `seed, seed + 1, ...`; the lowest
/// successful attempt wins.
pub fn construct_auxiliary(params: &AuxParams, limits: &SearchLimits) -> Result<(Graph, AuxCertificate)> {
    params.validate()?;
    check_limit("auxiliary sample order", 2 * params.m, limits.mask_vertices())?;
    let found = (0..params.attempts)
        .into_par_iter()
        .map(|i| attempt(params, i, limits))
        .find_first(|r| !matches!(r, Ok(None)));
    match found {
        Some(Ok(Some(a))) => Ok((a.graph, a.cert)),
        Some(Err(e)) => Err(e),
        _ => {
            let best = (0..params.attempts)
                .map(|i| {
                    let s = sample_gnp(2 * params.m, params.p, params.seed.wrapping_add(i as u64));
                    destroy_short_cycles(&s, params.g).kept.len()
                })
                .max()
                .unwrap_or(0);
            Err(Error::ConstructionFailed {
                attempts: params.attempts,
                reason: format!(
                    "at most {best} of {} vertices survived cycle deletion, need {}",
                    2 * params.m,
                    params.m
                ),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorLemmaCheck {
    pub m: usize,
    pub alpha2: usize,
    pub alpha2_square: usize,
    pub bound: usize,
    pub holds: bool,
}

/// Exact `alpha_2(A^2)` against `4m(alpha_2(A) + 1)`.
pub fn check_tensor_lemma(a: &Graph, limits: &SearchLimits) -> Result<TensorLemmaCheck> {
    let m = a.vertex_count();
    let sq = tensor_square(a, limits)?;
    let alpha2 = multipartite_independence(a, limits)?;
    let alpha2_square = multipartite_independence(&sq, limits)?;
    let bound = 4 * m * (alpha2 + 1);
    Ok(TensorLemmaCheck {
        m,
        alpha2,
        alpha2_square,
        bound,
        holds: alpha2_square < bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonNeighborhoodCheck {
    pub alpha2: usize,
    pub checked_sets: usize,
    pub mode: CheckMode,
    pub holds: bool,
    pub violation: Option<VertexSet>,
}

/// Checks `|U| > alpha_2(A)` implies `|N(U)| <= 2 alpha_2(A) + 1`. Only sets
/// of size `alpha_2 + 1` need checking; exhaustive up to 12 vertices.
pub fn check_nonneighborhood_lemma(a: &Graph, seed: u64, limits: &SearchLimits) -> Result<NonNeighborhoodCheck> {
    let m = a.vertex_count();
    let alpha2 = multipartite_independence(a, limits)?;
    let size = alpha2 + 1;
    let cap = 2 * alpha2 + 1;
    let mut checked = 0;
    let mut violation = None;
    let mode = if size > m {
        CheckMode::Vacuous
    } else if m <= 12 {
        for_each_subset(m, size, |ids| {
            checked += 1;
            let u = VertexSet::from_ids(m, ids.iter().copied());
            if non_neighborhood(a, &u).len() > cap {
                violation = Some(u);
            }
            violation.is_none()
        });
        CheckMode::Exhaustive
    } else {
        let mut rng = rng_for(seed);
        for _ in 0..PROPERTY_SAMPLES {
            checked += 1;
            let u = VertexSet::from_ids(m, sample(&mut rng, m, size));
            if non_neighborhood(a, &u).len() > cap {
                violation = Some(u);
                break;
            }
        }
        CheckMode::Sampled { samples: checked }
    };
    Ok(NonNeighborhoodCheck {
        alpha2,
        checked_sets: checked,
        mode,
        holds: violation.is_none(),
        violation,
    })
}

/// `m^(-2/(s-1))`.
pub fn p_hom_lower(s: usize, m: f64) -> Result<f64> {
    if s < 2 || m.is_nan() || m < 1.0 {
        return Err(Error::Domain(format!(
            "p_hom_lower needs s >= 2 and m >= 1, got s = {s}, m = {m}"
        )));
    }
    Ok(m.powf(-2.0 / (s as f64 - 1.0)))
}

/// Number of cycles of length at most `max_len`, each counted once.
pub fn count_short_cycles(g: &Graph, max_len: usize) -> usize {
    fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, max_len: usize, count: &mut usize) {
        let last = *path.last().unwrap();
        for w in g.neighbors(last).iter() {
            if w == start && path.len() >= 3 && path[1] < last {
                *count += 1;
            } else if w > start && !path.contains(&w) && path.len() < max_len {
                path.push(w);
                extend(g, start, path, max_len, count);
                path.pop();
            }
        }
    }
    let mut count = 0;
    for s in 0..g.vertex_count() {
        extend(g, s, &mut vec![s], max_len, &mut count);
    }
    count
}
