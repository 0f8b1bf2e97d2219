//! Triangle-free colourings of the complete tripartite digraph on parts
//! `I = 0..n`, `J = n..2n`, `K = 2n..3n`, and the recolouring machinery used
//! to count them.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::logval::LogValue;
use crate::solvers::count_homomorphisms_into_complement;
use crate::vertex_set::VertexSet;

const UNSET: u32 = u32::MAX - 1;
const SAME_PART: u32 = u32::MAX;

/// The part (0 = I, 1 = J, 2 = K) holding vertex `v`.
fn part(n: usize, v: usize) -> usize {
    v / n
}

/// A colouring of the `6n^2` ordered cross-part pairs by palette vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct TripartiteColoring {
    n: usize,
    palette: Graph,
    table: Vec<u32>,
}

impl std::fmt::Debug for TripartiteColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let values: Vec<_> = cross_pairs(self.n).iter().map(|&(a, b)| self.color(a, b)).collect();
        f.debug_struct("TripartiteColoring")
            .field("n", &self.n)
            .field("values", &values)
            .finish()
    }
}

/// All ordered cross-part pairs: `E1`, then `E2`, then `E3`.
pub fn cross_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = EdgeSubset::e1(n).pairs;
    out.extend(EdgeSubset::e2(n).pairs);
    out.extend(EdgeSubset::e3(n).pairs);
    out
}

impl TripartiteColoring {
    /// Colours the cross pair `(a, b)` with `f(a, b)`, visiting pairs in
    /// [`cross_pairs`] order.
    pub fn new(n: usize, palette: Graph, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let m = palette.vertex_count();
        let mut c = TripartiteColoring::blank(n, palette);
        for (a, b) in cross_pairs(n) {
            let v = f(a, b);
            if v >= m {
                return Err(Error::Invalid(format!("colour {v} of pair ({a},{b}) >= m = {m}")));
            }
            c.set(a, b, v as u32);
        }
        Ok(c)
    }

    fn blank(n: usize, palette: Graph) -> Self {
        let size = 3 * n;
        let mut table = vec![UNSET; size * size];
        for a in 0..size {
            for b in 0..size {
                if part(n, a) == part(n, b) {
                    table[a * size + b] = SAME_PART;
                }
            }
        }
        TripartiteColoring { n, palette, table }
    }

    pub fn part_size(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> &Graph {
        &self.palette
    }

    pub fn color(&self, a: usize, b: usize) -> usize {
        let v = self.raw(a, b);
        assert!(v < UNSET, "pair ({a},{b}) is not a coloured cross pair");
        v as usize
    }

    fn raw(&self, a: usize, b: usize) -> u32 {
        self.table[a * 3 * self.n + b]
    }

    fn set(&mut self, a: usize, b: usize, v: u32) {
        let size = 3 * self.n;
        self.table[a * size + b] = v;
    }

    fn adj(&self, x: u32, y: u32) -> bool {
        self.palette.has_edge(x as usize, y as usize)
    }

    /// Whether `(i, j, k)` in `I x J x K` is an adjacent triangle; `None`
    /// while any of its six pairs is uncoloured.
    fn triangle(&self, i: usize, j: usize, k: usize) -> Option<bool> {
        let pairs = [(i, j), (i, k), (j, i), (j, k), (k, i), (k, j)];
        let mut v = [0u32; 6];
        for (slot, &(a, b)) in v.iter_mut().zip(&pairs) {
            *slot = self.raw(a, b);
            if *slot == UNSET {
                return None;
            }
        }
        Some(self.adj(v[0], v[1]) && self.adj(v[2], v[3]) && self.adj(v[4], v[5]))
    }

    /// Whether some completed triangle through the pair `(a, b)` is adjacent.
    fn breaks_at(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        let third = 3 - part(n, a) - part(n, b);
        (third * n..(third + 1) * n).any(|c| {
            let mut t = [a, b, c];
            t.sort_unstable_by_key(|&v| part(n, v));
            self.triangle(t[0], t[1], t[2]) == Some(true)
        })
    }
}

/// No `(i, j, k)` in `I x J x K` is an adjacent triangle.
pub fn is_triangle_free(chi: &TripartiteColoring) -> bool {
    let n = chi.n;
    (0..n).all(|i| (n..2 * n).all(|j| (2 * n..3 * n).all(|k| chi.triangle(i, j, k) != Some(true))))
}

/// A set of ordered cross pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSubset {
    pub pairs: Vec<(usize, usize)>,
}

impl EdgeSubset {
    pub fn empty() -> Self {
        EdgeSubset { pairs: Vec::new() }
    }

    /// Pairs out of `I`: `I x (J u K)`.
    pub fn e1(n: usize) -> Self {
        EdgeSubset {
            pairs: (0..n).flat_map(|i| (n..3 * n).map(move |v| (i, v))).collect(),
        }
    }

    /// Pairs out of `I` at a single `i`.
    pub fn e1_at(n: usize, i: usize) -> Self {
        EdgeSubset {
            pairs: (n..3 * n).map(|v| (i, v)).collect(),
        }
    }

    /// Pairs into `I`: `(J u K) x I`.
    pub fn e2(n: usize) -> Self {
        EdgeSubset {
            pairs: (n..3 * n).flat_map(|v| (0..n).map(move |i| (v, i))).collect(),
        }
    }

    /// Pairs between `J` and `K` in both directions.
    pub fn e3(n: usize) -> Self {
        let mut pairs = Vec::with_capacity(2 * n * n);
        for j in n..2 * n {
            for k in 2 * n..3 * n {
                pairs.push((j, k));
                pairs.push((k, j));
            }
        }
        EdgeSubset { pairs }
    }

    /// `{(j, k), (k, j)}`.
    pub fn both_ways(j: usize, k: usize) -> Self {
        EdgeSubset {
            pairs: vec![(j, k), (k, j)],
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn log2_states(m: usize, pairs: usize) -> f64 {
    pairs as f64 * (m.max(1) as f64).log2()
}

/// Extends a partial colouring over `order`, rejecting as soon as a
/// completed triangle is adjacent.
struct Extend<'a> {
    order: &'a [(usize, usize)],
    m: u32,
}

impl Extend<'_> {
    fn count(&self, chi: &mut TripartiteColoring, depth: usize) -> BigUint {
        if depth == self.order.len() {
            return BigUint::one();
        }
        let (a, b) = self.order[depth];
        let mut total = BigUint::zero();
        for v in 0..self.m {
            chi.set(a, b, v);
            if !chi.breaks_at(a, b) {
                total += self.count(chi, depth + 1);
            }
        }
        chi.set(a, b, UNSET);
        total
    }

    fn collect(&self, chi: &mut TripartiteColoring, depth: usize, out: &mut Vec<TripartiteColoring>) {
        if depth == self.order.len() {
            out.push(chi.clone());
            return;
        }
        let (a, b) = self.order[depth];
        for v in 0..self.m {
            chi.set(a, b, v);
            if !chi.breaks_at(a, b) {
                self.collect(chi, depth + 1, out);
            }
        }
        chi.set(a, b, UNSET);
    }
}

/// Colouring order `E2`, `E3`, `E1`.
fn census_order(n: usize) -> Vec<(usize, usize)> {
    let mut order = EdgeSubset::e2(n).pairs;
    order.extend(EdgeSubset::e3(n).pairs);
    order.extend(EdgeSubset::e1(n).pairs);
    order
}

fn check_census_size(n: usize, palette: &Graph, limits: &SearchLimits) -> Result<()> {
    let bits = log2_states(palette.vertex_count(), 6 * n * n);
    if n == 0 || palette.vertex_count() == 0 {
        return Err(Error::Domain("census needs n >= 1 and a nonempty palette".into()));
    }
    if bits > limits.census_log2_states as f64 {
        return Err(Error::SizeLimitExceeded {
            what: "census log2 states",
            size: bits.ceil() as u64,
            limit: limits.census_log2_states as u64,
        });
    }
    Ok(())
}

/// Exact number of triangle-free colourings. The first pair's colours are
/// counted in parallel.
pub fn enumerate_triangle_free(n: usize, palette: &Graph, limits: &SearchLimits) -> Result<BigUint> {
    check_census_size(n, palette, limits)?;
    let order = census_order(n);
    let m = palette.vertex_count() as u32;
    let (a, b) = order[0];
    let ext = Extend { order: &order, m };
    Ok((0..m)
        .into_par_iter()
        .map(|v| {
            let mut chi = TripartiteColoring::blank(n, palette.clone());
            chi.set(a, b, v);
            ext.count(&mut chi, 1)
        })
        .sum())
}

/// Every triangle-free colouring, in the census order.
pub fn triangle_free_colorings(n: usize, palette: &Graph, limits: &SearchLimits) -> Result<Vec<TripartiteColoring>> {
    check_census_size(n, palette, limits)?;
    let order = census_order(n);
    let ext = Extend {
        order: &order,
        m: palette.vertex_count() as u32,
    };
    let mut out = Vec::new();
    ext.collect(&mut TripartiteColoring::blank(n, palette.clone()), 0, &mut out);
    Ok(out)
}

fn recoloring_setup(chi: &TripartiteColoring, s: &EdgeSubset, limits: &SearchLimits) -> Result<TripartiteColoring> {
    let bits = log2_states(chi.palette.vertex_count(), s.len());
    if bits > limits.recoloring_log2_states as f64 {
        return Err(Error::SizeLimitExceeded {
            what: "recoloring log2 states",
            size: bits.ceil() as u64,
            limit: limits.recoloring_log2_states as u64,
        });
    }
    if !is_triangle_free(chi) {
        return Err(Error::NotTriangleFree);
    }
    let mut base = chi.clone();
    for &(a, b) in &s.pairs {
        if base.raw(a, b) >= UNSET {
            return Err(Error::Invalid(format!("({a},{b}) is not a cross pair")));
        }
        base.set(a, b, UNSET);
    }
    Ok(base)
}

/// All triangle-free colourings agreeing with `chi` off `s`.
pub fn recolorings(chi: &TripartiteColoring, s: &EdgeSubset, limits: &SearchLimits) -> Result<Vec<TripartiteColoring>> {
    let mut base = recoloring_setup(chi, s, limits)?;
    let ext = Extend {
        order: &s.pairs,
        m: chi.palette.vertex_count() as u32,
    };
    let mut out = Vec::new();
    ext.collect(&mut base, 0, &mut out);
    Ok(out)
}

/// `|recolorings(chi, s)|` without materialising them.
pub fn recoloring_count(chi: &TripartiteColoring, s: &EdgeSubset, limits: &SearchLimits) -> Result<BigUint> {
    let mut base = recoloring_setup(chi, s, limits)?;
    let ext = Extend {
        order: &s.pairs,
        m: chi.palette.vertex_count() as u32,
    };
    Ok(ext.count(&mut base, 0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductCheck {
    #[serde(with = "crate::decimal")]
    pub lhs: BigUint,
    #[serde(with = "crate::decimal")]
    pub rhs: BigUint,
    pub holds: bool,
}

impl ProductCheck {
    fn new(lhs: BigUint, rhs: BigUint) -> Self {
        let holds = lhs == rhs;
        ProductCheck { lhs, rhs, holds }
    }
}

/// Recolourings on `E3` against the product over `(j, k)` of recolourings
/// on `{(j,k), (k,j)}`.
pub fn check_product_formula_e3(chi: &TripartiteColoring, limits: &SearchLimits) -> Result<ProductCheck> {
    let n = chi.n;
    let lhs = recoloring_count(chi, &EdgeSubset::e3(n), limits)?;
    let mut rhs = BigUint::one();
    for j in n..2 * n {
        for k in 2 * n..3 * n {
            rhs *= recoloring_count(chi, &EdgeSubset::both_ways(j, k), limits)?;
        }
    }
    Ok(ProductCheck::new(lhs, rhs))
}

/// Bipartite graph on `J u K` (local ids `0..n` for `J`, `n..2n` for `K`)
/// with `j ~ k` iff `c(j,i) ~ c(j,k)` and `c(k,i) ~ c(k,j)`.
pub fn build_gi(chi: &TripartiteColoring, i: usize) -> Graph {
    let n = chi.n;
    assert!(i < n, "vertex {i} is not in I");
    let mut edges = Vec::new();
    for j in n..2 * n {
        for k in 2 * n..3 * n {
            if chi.adj(chi.raw(j, i), chi.raw(j, k)) && chi.adj(chi.raw(k, i), chi.raw(k, j)) {
                edges.push((j - n, k - n));
            }
        }
    }
    Graph::from_edges(2 * n, edges).expect("local ids in range")
}

/// `j ~ k` iff some recolouring of `{(j,k), (k,j)}` puts `j ~ k` in `G_i`.
pub fn build_gi_star(chi: &TripartiteColoring, i: usize, limits: &SearchLimits) -> Result<Graph> {
    let n = chi.n;
    let mut edges = Vec::new();
    for j in n..2 * n {
        for k in 2 * n..3 * n {
            let family = recolorings(chi, &EdgeSubset::both_ways(j, k), limits)?;
            if family.iter().any(|c| build_gi(c, i).has_edge(j - n, k - n)) {
                edges.push((j - n, k - n));
            }
        }
    }
    Ok(Graph::from_edges(2 * n, edges).expect("local ids in range"))
}

/// Homomorphism counts of each `G_i` into the palette complement, where
/// equal images are allowed.
pub fn hom_counts(chi: &TripartiteColoring, limits: &SearchLimits) -> Result<Vec<BigUint>> {
    (0..chi.n)
        .map(|i| count_homomorphisms_into_complement(&build_gi(chi, i), &chi.palette, limits))
        .collect()
}

/// Recolourings on `E1` against the product of homomorphism counts.
pub fn check_hom_product_formula(chi: &TripartiteColoring, limits: &SearchLimits) -> Result<ProductCheck> {
    let lhs = recoloring_count(chi, &EdgeSubset::e1(chi.n), limits)?;
    let rhs = hom_counts(chi, limits)?.into_iter().product();
    Ok(ProductCheck::new(lhs, rhs))
}

/// The reading of the per-`i` threshold exponent used by [`iota`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IotaExponent {
    /// `m^((2 - c^2/g) n)`.
    Scaled,
    /// `m^(2 - c^2/g)`.
    Unscaled,
}

/// Counting parameters: the constant `c` and the odd-girth target `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub c: f64,
    pub g: usize,
    pub iota_exponent: IotaExponent,
}

impl FamilyParams {
    pub fn new(g: usize) -> Self {
        FamilyParams {
            c: 1e-4,
            g,
            iota_exponent: IotaExponent::Scaled,
        }
    }

    fn log_m(&self, m: usize, e: f64) -> LogValue {
        LogValue::from_ln(e * (m as f64).ln())
    }

    /// `m^((2 - c^2/(7g)) n^2)`, the cut-off for the low-entropy families on
    /// `E1` and `E3`.
    pub fn low_entropy_threshold(&self, m: usize, n: usize) -> LogValue {
        let c2 = self.c * self.c;
        self.log_m(m, (2.0 - c2 / (7.0 * self.g as f64)) * (n * n) as f64)
    }

    /// `m^(2 - 1/(3g))`.
    pub fn small_set_threshold(&self, m: usize) -> f64 {
        (m as f64).powf(2.0 - 1.0 / (3.0 * self.g as f64))
    }

    pub fn iota_threshold(&self, m: usize, n: usize) -> LogValue {
        let e = 2.0 - self.c * self.c / self.g as f64;
        match self.iota_exponent {
            IotaExponent::Scaled => self.log_m(m, e * n as f64),
            IotaExponent::Unscaled => self.log_m(m, e),
        }
    }

    /// `m^((6 - c^2/(8g)) n^2)`.
    pub fn census_bound(&self, m: usize, n: usize) -> LogValue {
        self.log_m(m, (6.0 - self.c * self.c / (8.0 * self.g as f64)) * (n * n) as f64)
    }
}

/// Fraction of `i` in `I` whose homomorphism count reaches the threshold.
pub fn iota(chi: &TripartiteColoring, params: &FamilyParams, limits: &SearchLimits) -> Result<BigRational> {
    let t = params.iota_threshold(chi.palette.vertex_count(), chi.n);
    let hits = hom_counts(chi, limits)?
        .iter()
        .filter(|h| LogValue::from_biguint(h) >= t)
        .count();
    Ok(BigRational::new(hits.into(), chi.n.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Membership {
    pub f1: bool,
    pub f2: bool,
    pub f3: bool,
}

/// Membership in the three low-entropy families.
pub fn family_membership(chi: &TripartiteColoring, params: &FamilyParams, limits: &SearchLimits) -> Result<Membership> {
    let n = chi.n;
    let m = chi.palette.vertex_count();
    let cut = params.low_entropy_threshold(m, n);
    let e1 = LogValue::from_biguint(&recoloring_count(chi, &EdgeSubset::e1(n), limits)?);
    let e3 = LogValue::from_biguint(&recoloring_count(chi, &EdgeSubset::e3(n), limits)?);
    Ok(Membership {
        f1: e1 <= cut,
        f2: in_f2(chi, params),
        f3: e3 <= cut,
    })
}

/// Fewest distinct values covering at least `need` of the points.
fn smallest_cover(points: &[(usize, usize)], need: f64) -> usize {
    let mut counts = std::collections::BTreeMap::new();
    for &p in points {
        *counts.entry(p).or_insert(0usize) += 1;
    }
    let mut freq: Vec<usize> = counts.into_values().collect();
    freq.sort_unstable_by(|a, b| b.cmp(a));
    let mut covered = 0;
    for (used, f) in freq.iter().enumerate() {
        if covered as f64 >= need {
            return used;
        }
        covered += f;
    }
    if covered as f64 >= need {
        freq.len()
    } else {
        usize::MAX
    }
}

/// At least `c n^2` pairs `(j, k)` admit a set of fewer than
/// `m^(2 - 1/(3g))` colour pairs containing `(c(j,i), c(k,i))` for at least
/// `c n` choices of `i`. Both counts are compared as reals.
fn in_f2(chi: &TripartiteColoring, params: &FamilyParams) -> bool {
    let n = chi.n;
    let small = params.small_set_threshold(chi.palette.vertex_count());
    let need_i = params.c * n as f64;
    let mut qualifying = 0usize;
    for j in n..2 * n {
        for k in 2 * n..3 * n {
            let points: Vec<_> = (0..n).map(|i| (chi.color(j, i), chi.color(k, i))).collect();
            if (smallest_cover(&points, need_i) as f64) < small {
                qualifying += 1;
            }
        }
    }
    qualifying as f64 >= params.c * (n * n) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub m: usize,
    #[serde(with = "crate::decimal")]
    pub count: BigUint,
    #[serde(with = "crate::decimal")]
    pub total: BigUint,
    pub bound: LogValue,
    /// `ln count / (n^2 ln m)`.
    pub ratio_log: f64,
    pub below_bound: bool,
}

/// Exact census against `m^((6 - c^2/(8g)) n^2)`.
pub fn census_vs_bound(
    n: usize,
    palette: &Graph,
    params: &FamilyParams,
    limits: &SearchLimits,
) -> Result<CensusReport> {
    let count = enumerate_triangle_free(n, palette, limits)?;
    let m = palette.vertex_count();
    let total = BigUint::from(m).pow((6 * n * n) as u32);
    let bound = params.census_bound(m, n);
    let lc = LogValue::from_biguint(&count);
    let ratio_log = lc.ln() / ((n * n) as f64 * (m as f64).ln());
    Ok(CensusReport {
        n,
        m,
        below_bound: lc <= bound,
        count,
        total,
        bound,
        ratio_log,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSubgraphCheck {
    #[serde(with = "crate::decimal")]
    pub family_size: BigUint,
    pub edges_checked: usize,
    /// Every `G_i*` edge appears in at least an `m^-2` share of `chi*(E3)`.
    pub marginals_ok: bool,
    /// Distinct pairs `(j,k)` appear independently, as exact ratios.
    pub independence_ok: bool,
    pub subgraph_ok: bool,
}

/// Exact check over the uniform family `chi*(E3)` that each `G_i(chi')` is a
/// subgraph of `G_i*(chi)` whose edges appear independently, each with
/// probability at least `m^-2`.
pub fn check_random_subgraph(chi: &TripartiteColoring, i: usize, limits: &SearchLimits) -> Result<RandomSubgraphCheck> {
    let n = chi.n;
    let m = chi.palette.vertex_count();
    let star = build_gi_star(chi, i, limits)?;
    let family = recolorings(chi, &EdgeSubset::e3(n), limits)?;
    let graphs: Vec<Graph> = family.iter().map(|c| build_gi(c, i)).collect();
    let total = graphs.len();
    let edges: Vec<(usize, usize)> = star.edges().collect();
    let subgraph_ok = graphs.iter().all(|g| g.edges().all(|(a, b)| star.has_edge(a, b)));
    let present = |e: (usize, usize)| graphs.iter().filter(|g| g.has_edge(e.0, e.1)).count();
    let marginals_ok = edges.iter().all(|&e| present(e) * m * m >= total);
    let mut independence_ok = true;
    for (x, &e) in edges.iter().enumerate() {
        for &f in &edges[x + 1..] {
            let both = graphs
                .iter()
                .filter(|g| g.has_edge(e.0, e.1) && g.has_edge(f.0, f.1))
                .count();
            independence_ok &= both * total == present(e) * present(f);
        }
    }
    Ok(RandomSubgraphCheck {
        family_size: BigUint::from(total),
        edges_checked: edges.len(),
        marginals_ok,
        independence_ok,
        subgraph_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseCheck {
    pub triples: usize,
    pub required: f64,
    pub dense: bool,
}

/// Counts `(i, j, k)` with `j ~ k` in `G_i*` against `(1 - 3c) n^3`.
pub fn check_gi_dense(chi: &TripartiteColoring, c: f64, limits: &SearchLimits) -> Result<DenseCheck> {
    let n = chi.n;
    let mut triples = 0;
    for i in 0..n {
        triples += build_gi_star(chi, i, limits)?.edge_count();
    }
    let required = (1.0 - 3.0 * c) * (n * n * n) as f64;
    Ok(DenseCheck {
        triples,
        required,
        dense: triples as f64 >= required,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MGoodCheck {
    pub degrees_ok: bool,
    pub incidence_ok: bool,
    /// Largest number of `V` vertices a qualifying `V'` may omit.
    pub removable: usize,
    /// Fewest edges incident to any qualifying `V'`.
    pub min_incident: usize,
    pub edges: usize,
}

impl MGoodCheck {
    pub fn is_good(&self) -> bool {
        self.degrees_ok && self.incidence_ok
    }
}

/// `U`-side regular of degree `m`, and every `V' ⊆ V` with
/// `|V'| >= (1-c)|V|` meets at least a quarter of the edges. Dropping the
/// highest-degree vertices of `V` gives the worst `V'`.
pub fn is_m_good(l: &Graph, u: &VertexSet, m: usize, c: f64) -> Result<MGoodCheck> {
    let v_side = u.complement();
    for a in u.iter() {
        if !l.neighbors(a).intersection(u).is_empty() {
            return Err(Error::Invalid("the U side is not independent".into()));
        }
    }
    for b in v_side.iter() {
        if !l.neighbors(b).intersection(&v_side).is_empty() {
            return Err(Error::Invalid("the V side is not independent".into()));
        }
    }
    let degrees_ok = u.iter().all(|a| l.degree(a) == m);
    let size = v_side.len();
    let keep = ((1.0 - c) * size as f64).ceil() as usize;
    let removable = size - keep.min(size);
    let mut deg: Vec<usize> = v_side.iter().map(|b| l.degree(b)).collect();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let edges = l.edge_count();
    let min_incident = edges - deg.iter().take(removable).sum::<usize>();
    Ok(MGoodCheck {
        degrees_ok,
        incidence_ok: 4 * min_incident >= edges,
        removable,
        min_incident,
        edges,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowHomCheck {
    #[serde(with = "crate::decimal")]
    pub homs: BigUint,
    pub bound: LogValue,
    pub below: bool,
}

/// `|hom(L, complement of A)|` against `m^((7/6 - c/(4g)) |V|)`.
pub fn check_good_low_hom(
    l: &Graph,
    v_size: usize,
    palette: &Graph,
    params: &FamilyParams,
    limits: &SearchLimits,
) -> Result<LowHomCheck> {
    let homs = count_homomorphisms_into_complement(l, palette, limits)?;
    let m = palette.vertex_count() as f64;
    let e = (7.0 / 6.0 - params.c / (4.0 * params.g as f64)) * v_size as f64;
    let bound = LogValue::from_ln(e * m.ln());
    Ok(LowHomCheck {
        below: LogValue::from_biguint(&homs) < bound,
        homs,
        bound,
    })
}

/// Index subsets with their cover multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFamily {
    pub ground: usize,
    pub sets: Vec<Vec<usize>>,
}

impl CoverFamily {
    /// Least number of sets containing any one index.
    pub fn multiplicity(&self) -> Result<usize> {
        let mut count = vec![0usize; self.ground];
        for s in &self.sets {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            for x in s {
                if x >= self.ground {
                    return Err(Error::Invalid(format!("cover index {x} >= {}", self.ground)));
                }
                count[x] += 1;
            }
        }
        match count.iter().position(|&c| c == 0) {
            Some(coordinate) => Err(Error::EmptyCover { coordinate }),
            None => Ok(count.into_iter().min().unwrap_or(0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShearerCheck {
    pub k: usize,
    pub lhs: LogValue,
    pub rhs: LogValue,
    pub holds: bool,
}

pub const SHEARER_TOLERANCE: f64 = 1e-9;

/// `|F|^k` against the product of projection sizes, in log space.
pub fn shearer_check(family: &[Vec<u32>], cover: &CoverFamily) -> Result<ShearerCheck> {
    if family.is_empty() {
        return Err(Error::Domain("Shearer check needs a nonempty family".into()));
    }
    if family.iter().any(|t| t.len() != cover.ground) {
        return Err(Error::Invalid(
            "tuple length differs from the cover's ground size".into(),
        ));
    }
    let k = cover.multiplicity()?;
    let mut distinct: Vec<&Vec<u32>> = family.iter().collect();
    distinct.sort();
    distinct.dedup();
    let lhs = LogValue::from_u64(distinct.len() as u64).powf(k as f64);
    let mut rhs = LogValue::ONE;
    for set in &cover.sets {
        let mut proj: Vec<Vec<u32>> = distinct.iter().map(|t| set.iter().map(|&x| t[x]).collect()).collect();
        proj.sort();
        proj.dedup();
        rhs = rhs * LogValue::from_u64(proj.len() as u64);
    }
    Ok(ShearerCheck {
        k,
        lhs,
        rhs,
        holds: lhs.ln() <= rhs.ln() + SHEARER_TOLERANCE,
    })
}

/// `f64` view of a big count, for reports.
pub fn approx(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn pair_sets() {
        assert_eq!(EdgeSubset::e1(2).len(), 8);
        assert_eq!(EdgeSubset::e2(2).len(), 8);
        assert_eq!(EdgeSubset::e3(2).len(), 8);
        assert_eq!(cross_pairs(1), vec![(0, 1), (0, 2), (1, 0), (2, 0), (1, 2), (2, 1)]);
    }

    #[test]
    fn small_censuses() {
        let e2 = enumerate_triangle_free(1, &Graph::empty(2), &lim()).unwrap();
        assert_eq!(e2, BigUint::from(64u32));
        let k2 = enumerate_triangle_free(1, &Graph::complete(2), &lim()).unwrap();
        assert_eq!(k2, BigUint::from(56u32));
        let listed = triangle_free_colorings(1, &Graph::complete(2), &lim()).unwrap();
        assert_eq!(listed.len(), 56);
        assert!(listed.iter().all(is_triangle_free));
    }

    #[test]
    fn adjacent_example_is_rejected() {
        // (0,1)=0, (0,2)=1, (1,0)=0, (2,0)=0, (1,2)=1, (2,1)=1
        let vals = [0, 1, 0, 0, 1, 1];
        let mut it = vals.iter();
        let chi = TripartiteColoring::new(1, Graph::complete(2), |_, _| *it.next().unwrap()).unwrap();
        assert!(!is_triangle_free(&chi));
        assert_eq!(
            recolorings(&chi, &EdgeSubset::empty(), &lim()),
            Err(Error::NotTriangleFree)
        );
    }

    #[test]
    fn recolouring_basics() {
        let chi = TripartiteColoring::new(1, Graph::empty(3), |_, _| 0).unwrap();
        assert_eq!(
            recolorings(&chi, &EdgeSubset::empty(), &lim()).unwrap(),
            vec![chi.clone()]
        );
        assert_eq!(recolorings(&chi, &EdgeSubset::e3(1), &lim()).unwrap().len(), 9);
        let p = check_product_formula_e3(&chi, &lim()).unwrap();
        assert!(p.holds);
        let h = check_hom_product_formula(&chi, &lim()).unwrap();
        assert_eq!(h.lhs, BigUint::from(9u32));
        assert!(h.holds);
    }

    #[test]
    fn gi_inside_gi_star() {
        for chi in triangle_free_colorings(1, &Graph::complete(2), &lim()).unwrap() {
            let g = build_gi(&chi, 0);
            let s = build_gi_star(&chi, 0, &lim()).unwrap();
            assert!(g.edges().all(|(a, b)| s.has_edge(a, b)));
        }
    }

    #[test]
    fn shearer_cases() {
        let cube: Vec<Vec<u32>> = (0..8u32).map(|x| vec![x & 1, x >> 1 & 1, x >> 2 & 1]).collect();
        let cover = CoverFamily {
            ground: 3,
            sets: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        };
        let r = shearer_check(&cube, &cover).unwrap();
        assert_eq!(r.k, 2);
        assert!(r.holds && (r.lhs.value() - 64.0).abs() < 1e-9 && (r.rhs.value() - 64.0).abs() < 1e-9);
        let diag = vec![vec![0, 0, 0], vec![1, 1, 1]];
        let r = shearer_check(&diag, &cover).unwrap();
        assert!(r.holds && (r.lhs.value() - 4.0).abs() < 1e-9 && (r.rhs.value() - 8.0).abs() < 1e-9);
        let bad = CoverFamily {
            ground: 3,
            sets: vec![vec![0, 1]],
        };
        assert_eq!(shearer_check(&diag, &bad), Err(Error::EmptyCover { coordinate: 2 }));
    }

    #[test]
    fn m_good_examples() {
        // K_{2,3} with U the 2-side.
        let l = Graph::complete_bipartite(2, 3);
        let u = VertexSet::from_ids(5, [0, 1]);
        assert!(is_m_good(&l, &u, 3, 1e-4).unwrap().is_good());
        assert!(!is_m_good(&l, &u, 2, 1e-4).unwrap().is_good());
        let half = is_m_good(&l, &u, 3, 0.5).unwrap();
        assert_eq!(half.removable, 1);
        assert_eq!(half.min_incident, 4);
    }

    #[test]
    fn census_report() {
        let r = census_vs_bound(1, &Graph::complete(2), &FamilyParams::new(3), &lim()).unwrap();
        assert_eq!(r.count, BigUint::from(56u32));
        assert!(r.below_bound);
        let e = census_vs_bound(1, &Graph::empty(2), &FamilyParams::new(3), &lim()).unwrap();
        assert!(!e.below_bound);
    }

    #[test]
    fn census_limit() {
        assert!(enumerate_triangle_free(2, &Graph::complete(3), &lim()).is_err());
    }
}
