//! Closed-form Ramsey bounds in log space, and an exhaustive solver for
//! `f3(N; s, t)`, the least independence number of an `N`-vertex 3-graph in
//! which every `s` vertices span fewer than `t` triples.

use std::f64::consts::{E, LN_2};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::logval::LogValue;
use crate::three_graph::ThreeGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
}

/// A named bound with its inputs, every intermediate quantity and the side
/// conditions checked at these inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: Vec<Quantity>,
    pub value: LogValue,
    pub quantities: Vec<Quantity>,
    pub conditions: Vec<Condition>,
}

impl BoundReport {
    pub fn new(name: &str, inputs: &[(&str, f64)], value: LogValue) -> Self {
        BoundReport {
            name: name.to_string(),
            inputs: inputs.iter().map(|&(n, v)| q(n, v)).collect(),
            value,
            quantities: Vec::new(),
            conditions: Vec::new(),
        }
    }

    pub fn quantity(mut self, name: &str, value: f64) -> Self {
        self.quantities.push(q(name, value));
        self
    }

    pub fn condition(mut self, name: &str, status: Status) -> Self {
        self.conditions.push(Condition {
            name: name.to_string(),
            status,
        });
        self
    }

    /// No condition failed.
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|x| x.name == name).map(|x| x.value)
    }
}

fn q(name: &str, value: f64) -> Quantity {
    Quantity {
        name: name.to_string(),
        value,
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    /// `(1 - p^3)^-n`.
    pub branch_p: LogValue,
    /// `delta m / (2 e n^2)`.
    pub branch_m: LogValue,
    /// The smaller branch.
    pub m_value: LogValue,
    /// `M^(delta n / 2) / 2`.
    pub value: LogValue,
}

/// Lower bound `1/2 min{(1-p^3)^-n, delta m/(2 e n^2)}^(delta n/2)` for a
/// link against a dense 3-graph on `n` vertices with `delta n^3` triples.
pub fn lower_bound_l31(m: f64, p: f64, n: usize, delta: f64) -> Result<LowerBound> {
    if m.is_nan() || m < 2.0 || !(0.0..=1.0).contains(&p) || n < 3 || !(delta > 0.0 && delta <= 1.0 / 6.0) {
        return Err(Error::Domain(format!(
            "lower bound needs m >= 2, p in [0,1], n >= 3, delta in (0, 1/6]; got m={m}, p={p}, n={n}, delta={delta}"
        )));
    }
    let nf = n as f64;
    let branch_p = LogValue::from_ln(-nf * (-(p * p * p)).ln_1p());
    let branch_m = LogValue::from_ln((delta * m).ln() - (2.0 * E * nf * nf).ln());
    let m_value = branch_p.min(branch_m);
    let value = LogValue::from_ln(m_value.ln() * delta * nf / 2.0 - LN_2);
    Ok(LowerBound {
        branch_p,
        branch_m,
        m_value,
        value,
    })
}

/// The threshold calculation behind the clique lower bound for `s >= 14`:
/// `m = C(n+s, s)^(2/13)`, `p = m^(-2/(s-1))` and both branches of
/// `min{(1-p^3)^(-3n), m/(486 e n^2)}`, with the proof's case split.
pub fn appendix_eval(s: usize, n: usize) -> Result<BoundReport> {
    if s < 14 || n < 2 {
        return Err(Error::Domain(format!(
            "appendix calculation needs s >= 14, n >= 2; got s={s}, n={n}"
        )));
    }
    let (sf, nf) = (s as f64, n as f64);
    let binom = binomial((n + s) as u64, s as u64);
    let ln_binom = LogValue::from_biguint(&binom).ln();
    let ln_m = 2.0 * ln_binom / 13.0;
    let ln_p = -2.0 * ln_m / (sf - 1.0);
    let p = ln_p.exp();
    // 1 - p^3 without cancellation.
    let one_minus_p3 = -(3.0 * ln_p).exp_m1();
    let ln_branch_p = -3.0 * nf * one_minus_p3.ln();
    let ln_branch_m = ln_m - (486.0 * E * nf * nf).ln();
    let ln_min = ln_branch_p.min(ln_branch_m);
    let small_s = s <= 10 * n;

    let mut r = BoundReport::new("appendix", &[("s", sf), ("n", nf)], LogValue::from_ln(ln_min))
        .quantity("ln_binom", ln_binom)
        .quantity("ln_m", ln_m)
        .quantity("p", p)
        .quantity("one_minus_p3", one_minus_p3)
        .quantity("ln_branch_p", ln_branch_p)
        .quantity("ln_branch_m", ln_branch_m)
        .quantity("ln_min", ln_min)
        .quantity("ln_m_13_14", 13.0 * ln_m / 14.0)
        .quantity("small_s_case", if small_s { 1.0 } else { 0.0 })
        .condition("p_in_open_unit_interval", Status::from_bool(p > 0.0 && p < 1.0))
        .condition(
            "branch_p_positive",
            Status::from_bool(ln_branch_p.is_finite() && ln_branch_p > f64::NEG_INFINITY),
        )
        .condition("branch_m_positive", Status::from_bool(ln_branch_m.is_finite()))
        .condition(
            "m_13_14_equals_binom_1_7",
            Status::from_bool((13.0 * ln_m / 14.0 - ln_binom / 7.0).abs() <= 1e-12 * ln_binom.max(1.0)),
        );

    // s <= 10n: (1-p^3)^(-3n) >= e^(3 p^3 n) and C(n+s, s) <= (11en/s)^s.
    let ln_exp_bound = 3.0 * (3.0 * ln_p).exp() * nf;
    let exponent = 12.0 * sf / (13.0 * (sf - 1.0));
    let ln_small_binom_cap = sf * (11.0 * E * nf / sf).ln();
    let small = |ok: bool| {
        if small_s {
            Status::from_bool(ok)
        } else {
            Status::NotApplicable
        }
    };
    r = r
        .quantity("ln_exp_bound", ln_exp_bound)
        .quantity("small_s_exponent", exponent)
        .quantity("ln_small_s_binom_cap", ln_small_binom_cap)
        .condition(
            "branch_p_at_least_exp_bound",
            small(ln_branch_p >= ln_exp_bound * (1.0 - 1e-12)),
        )
        .condition(
            "binom_at_most_11en_over_s_pow_s",
            small(ln_binom <= ln_small_binom_cap * (1.0 + 1e-12)),
        )
        .condition(
            "exponent_at_most_1_minus_1_169",
            small(exponent <= 1.0 - 1.0 / 169.0 + 1e-15),
        );

    // s > 10n: 1 - p^3 <= 6 ln m/(s-1), C(n+s, s) <= (2es/n)^n and
    // 6 ln m <= (12/13) n ln(2es/n).
    let linear = 6.0 * ln_m / (sf - 1.0);
    let ln_large_binom_cap = nf * (2.0 * E * sf / nf).ln();
    let ln_final = 3.0 * nf * ((sf - 1.0) / (2.0 * E * sf * nf).sqrt()).ln();
    let large = |ok: bool| {
        if small_s {
            Status::NotApplicable
        } else {
            Status::from_bool(ok)
        }
    };
    r = r
        .quantity("six_ln_m_over_s_minus_1", linear)
        .quantity("ln_large_s_binom_cap", ln_large_binom_cap)
        .quantity("ln_sqrt_chain_bound", ln_final)
        .condition(
            "one_minus_p3_at_most_linear",
            large(one_minus_p3 <= linear * (1.0 + 1e-12)),
        )
        .condition(
            "binom_at_most_2es_over_n_pow_n",
            large(ln_binom <= ln_large_binom_cap * (1.0 + 1e-12)),
        )
        .condition(
            "six_ln_m_at_most_12_13_n_ln",
            large(6.0 * ln_m <= 12.0 / 13.0 * ln_large_binom_cap * (1.0 + 1e-12)),
        )
        .condition(
            "branch_p_at_least_sqrt_chain",
            large(ln_branch_p >= ln_final * (1.0 - 1e-12) - 1e-12),
        );
    Ok(r)
}

/// `t 2^h r^(h-1)`.
pub fn blowup_bound(h: usize, t: u64, r_hg: LogValue) -> LogValue {
    LogValue::from_u64(t) * LogValue::from_ln(h as f64 * LN_2) * r_hg.powf(h as f64 - 1.0)
}

/// `r(F,G) 2^h r(H,G)^(h-1)`.
pub fn replace_bound(h: usize, r_fg: LogValue, r_hg: LogValue) -> LogValue {
    r_fg * LogValue::from_ln(h as f64 * LN_2) * r_hg.powf(h as f64 - 1.0)
}

/// `C(s+n-2, s-1) + 1`.
pub fn link_vs_link_bound(s: usize, n: usize) -> BigUint {
    assert!(s >= 1 && n >= 1, "link bound needs s, n >= 1");
    binomial((s + n - 2) as u64, (s - 1) as u64) + 1u32
}

/// `m 2^(n+1) (C(s+n-2, s-1) + 1)^n`.
pub fn blowup_link_bound(s: usize, n: usize, m_blow: u64) -> LogValue {
    let base = LogValue::from_biguint(&link_vs_link_bound(s, n));
    LogValue::from_u64(m_blow) * LogValue::from_ln((n + 1) as f64 * LN_2) * base.powf(n as f64)
}

/// `3n r^h`.
pub fn indep_edge_bound(h: usize, n: usize, r_host: LogValue) -> LogValue {
    LogValue::from_u64(3 * n as u64) * r_host.powf(h as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EBeta {
    pub alpha: f64,
    pub beta: f64,
    pub six_beta: f64,
    /// `|beta - (beta alpha^3 + alpha (1-alpha)^2 / 2)|`.
    pub residual: f64,
}

/// `alpha = sqrt(3)/2 - 1/2` and the fixed point of
/// `beta = beta alpha^3 + alpha (1-alpha)^2 / 2`.
pub fn e_recursion_beta() -> EBeta {
    let alpha = 3f64.sqrt() / 2.0 - 0.5;
    let a3 = alpha * alpha * alpha;
    let beta = alpha * (1.0 - alpha) * (1.0 - alpha) / (2.0 * (1.0 - a3));
    let residual = (beta - (beta * a3 + alpha * (1.0 - alpha) * (1.0 - alpha) / 2.0)).abs();
    EBeta {
        alpha,
        beta,
        six_beta: 6.0 * beta,
        residual,
    }
}

/// `E(s) = E(s1) + s1 C(s - s1, 2)` with `s1 = round(alpha s)`, from
/// `E(1) = E(2) = 0`. Entry `s` of the result is `E(s)`.
pub fn e_recursion_table(s_max: usize) -> Vec<u64> {
    let alpha = e_recursion_beta().alpha;
    let mut e = vec![0u64; s_max + 1];
    for s in 3..=s_max {
        let s1 = ((alpha * s as f64).round() as usize).clamp(1, s - 1);
        let s2 = (s - s1) as u64;
        e[s] = e[s1] + s1 as u64 * (s2 * (s2 - 1) / 2);
    }
    e
}

/// `E(s) / C(s, 3)` at the given `s`, which tends to `6 beta`.
pub fn e_recursion_trend(points: &[usize]) -> Vec<(usize, f64)> {
    let max = points.iter().copied().max().unwrap_or(0);
    let e = e_recursion_table(max);
    points
        .iter()
        .filter(|&&s| s >= 3)
        .map(|&s| {
            let c3 = (s * (s - 1) * (s - 2) / 6) as f64;
            (s, e[s] as f64 / c3)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct F3Result {
    pub n_vertices: usize,
    pub s: usize,
    pub t: usize,
    pub value: usize,
    pub witness: ThreeGraph,
    /// Qualifying 3-graphs visited.
    pub qualifying: u64,
}

struct F3Search {
    triples: Vec<[usize; 3]>,
    /// Vertex subsets (as masks) that contain each triple.
    kills: Vec<u64>,
    /// For each triple, the `s`-subsets containing it.
    s_sets: Vec<Vec<usize>>,
    size_masks: Vec<u64>,
    t: usize,
}

impl F3Search {
    fn new(n: usize, s: usize, t: usize) -> Self {
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triples.push([a, b, c]);
                }
            }
        }
        let subsets = 1usize << n;
        let mut size_masks = vec![0u64; n + 1];
        for x in 0..subsets {
            size_masks[x.count_ones() as usize] |= 1 << x;
        }
        let s_list: Vec<usize> = (0..subsets).filter(|x| x.count_ones() as usize == s).collect();
        let kills = triples
            .iter()
            .map(|tr| {
                let tm = tr.iter().fold(0usize, |m, &v| m | 1 << v);
                (0..subsets).filter(|x| x & tm == tm).fold(0u64, |m, x| m | 1 << x)
            })
            .collect();
        let s_sets = triples
            .iter()
            .map(|tr| {
                let tm = tr.iter().fold(0usize, |m, &v| m | 1 << v);
                s_list
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x & tm == tm)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        F3Search {
            triples,
            kills,
            s_sets,
            size_masks,
            t,
        }
    }

    fn alpha(&self, dead: u64) -> usize {
        (0..self.size_masks.len())
            .rev()
            .find(|&k| self.size_masks[k] & !dead != 0)
            .unwrap_or(0)
    }

    /// Best `(alpha, chosen triples)` below `idx`, and the number of leaves.
    fn run(&self, idx: usize, dead: u64, counts: &mut [usize], chosen: &mut Vec<usize>) -> ((usize, Vec<usize>), u64) {
        if idx == self.triples.len() {
            return ((self.alpha(dead), chosen.clone()), 1);
        }
        let (mut best, mut leaves) = self.run(idx + 1, dead, counts, chosen);
        let sets = &self.s_sets[idx];
        if sets.iter().all(|&x| counts[x] + 1 < self.t) {
            for &x in sets {
                counts[x] += 1;
            }
            chosen.push(idx);
            let (cand, l) = self.run(idx + 1, dead | self.kills[idx], counts, chosen);
            chosen.pop();
            for &x in sets {
                counts[x] -= 1;
            }
            leaves += l;
            if cand.0 < best.0 {
                best = cand;
            }
        }
        (best, leaves)
    }
}

/// Exact `f3(N; s, t)` by enumerating every 3-graph on `N` vertices whose
/// `s`-subsets all span fewer than `t` triples. The two branches on the
/// first triple run in parallel.
pub fn f3_small(n: usize, s: usize, t: usize, limits: &SearchLimits) -> Result<F3Result> {
    if n > limits.f3_vertices {
        return Err(Error::SizeLimitExceeded {
            what: "f3 vertices",
            size: n as u64,
            limit: limits.f3_vertices as u64,
        });
    }
    if n == 0 || s == 0 || t == 0 {
        return Err(Error::Domain(format!("f3 needs N, s, t >= 1; got N={n}, s={s}, t={t}")));
    }
    let search = F3Search::new(n, s, t);
    let s_count = (0..1usize << n).filter(|x| x.count_ones() as usize == s).count();
    let ((value, chosen), qualifying) = if search.triples.is_empty() {
        ((n, Vec::new()), 1)
    } else {
        let sets = &search.s_sets[0];
        let branches: Vec<_> = [false, true]
            .into_par_iter()
            .filter_map(|take| {
                let mut counts = vec![0usize; s_count];
                let mut chosen = Vec::new();
                let mut dead = 0;
                if take {
                    if !sets.iter().all(|&x| counts[x] + 1 < t) {
                        return None;
                    }
                    for &x in sets {
                        counts[x] += 1;
                    }
                    chosen.push(0);
                    dead = search.kills[0];
                }
                Some(search.run(1, dead, &mut counts, &mut chosen))
            })
            .collect();
        let leaves = branches.iter().map(|b| b.1).sum();
        let best = branches
            .into_iter()
            .map(|b| b.0)
            .min_by_key(|b| b.0)
            .expect("the empty graph qualifies");
        (best, leaves)
    };
    let witness = ThreeGraph::new(n, chosen.iter().map(|&i| search.triples[i]))?;
    Ok(F3Result {
        n_vertices: n,
        s,
        t,
        value,
        witness,
        qualifying,
    })
}
