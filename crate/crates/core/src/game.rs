//! The vertex online Ramsey game for a red forward star `K*_{1,s-1}` against
//! a blue `K_{n-1}`, and its reduction to 3-graph hosts.
//!
//! Vertices are revealed one at a time. For the newest vertex Builder names
//! earlier vertices in increasing order; each named pair becomes an edge that
//! Painter colours at once. The engine stops at the first monochromatic
//! target.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::logval::LogValue;
use crate::three_graph::ThreeGraph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// Vertex and edge caps that force termination against any strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for GameLimits {
    fn default() -> Self {
        GameLimits {
            max_vertices: 10_000,
            max_edges: 1_000_000,
        }
    }
}

/// Vertices, red edges and total edges used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Resources {
    pub vertices: usize,
    pub red_edges: usize,
    pub edges: usize,
}

impl Resources {
    pub fn within(&self, cap: &Resources) -> bool {
        self.vertices <= cap.vertices && self.red_edges <= cap.red_edges && self.edges <= cap.edges
    }
}

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Resources the U/W Builder never exceeds:
/// `n-1+(s-2)(n-2)` vertices, `(s-2)(n-2)+1` red edges and
/// `(s-1) C(n-1, 2)` edges.
pub fn l62_caps(s: usize, n: usize) -> Resources {
    Resources {
        vertices: n - 1 + (s - 2) * (n - 2),
        red_edges: (s - 2) * (n - 2) + 1,
        edges: (s - 1) * binom2(n - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Vertex,
    Edge,
}

/// One transcript entry: a revealed vertex, or a coloured edge `[earlier, later]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    #[serde(rename = "type")]
    pub kind: EventKind,
    pub endpoints: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transcript {
    pub events: Vec<Event>,
}

impl Transcript {
    pub fn colors(&self) -> Vec<Color> {
        self.events.iter().filter_map(|e| e.color).collect()
    }
}

/// The coloured graph built so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    pub s: usize,
    pub n: usize,
    /// `adj[v]` lists `(u, colour)` for every edge at `v`.
    adj: Vec<Vec<(usize, Color)>>,
    resources: Resources,
    transcript: Transcript,
}

impl GameState {
    pub fn new(s: usize, n: usize) -> Self {
        GameState {
            s,
            n,
            adj: Vec::new(),
            resources: Resources::default(),
            transcript: Transcript::default(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// The most recently revealed vertex.
    pub fn newest(&self) -> Option<usize> {
        self.adj.len().checked_sub(1)
    }

    pub fn resources(&self) -> Resources {
        self.resources
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn color(&self, a: usize, b: usize) -> Option<Color> {
        self.adj.get(a)?.iter().find(|&&(u, _)| u == b).map(|&(_, c)| c)
    }

    fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.resources.vertices += 1;
        let v = self.adj.len() - 1;
        self.transcript.events.push(Event {
            kind: EventKind::Vertex,
            endpoints: vec![v],
            color: None,
        });
        v
    }

    fn add_edge(&mut self, a: usize, b: usize, c: Color) {
        self.adj[a].push((b, c));
        self.adj[b].push((a, c));
        self.resources.edges += 1;
        if c == Color::Red {
            self.resources.red_edges += 1;
        }
        self.transcript.events.push(Event {
            kind: EventKind::Edge,
            endpoints: vec![a, b],
            color: Some(c),
        });
    }

    fn later(&self, v: usize, c: Color) -> impl Iterator<Item = usize> + '_ {
        self.adj[v]
            .iter()
            .filter(move |&&(u, col)| u > v && col == c)
            .map(|&(u, _)| u)
    }

    /// A win created by the edge `{a, b}` (`a < b`).
    fn win_through(&self, a: usize, b: usize) -> Option<(WinKind, Vec<usize>)> {
        match self.color(a, b)? {
            Color::Red => {
                let mut leaves: Vec<usize> = self.later(a, Color::Red).collect();
                if leaves.len() + 1 < self.s {
                    return None;
                }
                leaves.sort_unstable();
                let mut w = vec![a];
                w.extend(leaves.into_iter().take(self.s - 1));
                Some((WinKind::RedForwardStar, w))
            }
            Color::Blue => {
                let blue = |v: usize| -> Vec<usize> {
                    let mut out: Vec<usize> = self.adj[v]
                        .iter()
                        .filter(|&&(_, c)| c == Color::Blue)
                        .map(|&(u, _)| u)
                        .collect();
                    out.sort_unstable();
                    out
                };
                let nb = blue(b);
                let common: Vec<usize> = blue(a).into_iter().filter(|u| nb.binary_search(u).is_ok()).collect();
                let mut clique = vec![a, b];
                if self.extend_blue(&common, self.n - 1, &mut clique) {
                    clique.sort_unstable();
                    Some((WinKind::BlueClique, clique))
                } else {
                    None
                }
            }
        }
    }

    fn extend_blue(&self, cand: &[usize], target: usize, clique: &mut Vec<usize>) -> bool {
        if clique.len() >= target {
            return true;
        }
        if clique.len() + cand.len() < target {
            return false;
        }
        for (x, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[x + 1..]
                .iter()
                .copied()
                .filter(|&u| self.color(v, u) == Some(Color::Blue))
                .collect();
            clique.push(v);
            if self.extend_blue(&next, target, clique) {
                return true;
            }
            clique.pop();
        }
        false
    }
}

pub trait Builder: Send {
    /// The next earlier vertex to join to the newest one, or `None` to
    /// reveal a new vertex.
    fn next_edge(&mut self, state: &GameState) -> Option<usize>;
}

pub trait Painter {
    fn paint(&mut self, state: &GameState, edge: (usize, usize)) -> Color;
}

/// Builder keeping a blue clique `U` and a set `W` of vertices with one red
/// edge into `U`. Each new vertex is joined to `U` in order until an edge
/// comes out red.
#[derive(Debug, Clone, Default)]
pub struct L62Builder {
    u: Vec<usize>,
    w: Vec<usize>,
    current: Option<usize>,
    pos: usize,
}

impl L62Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn w(&self) -> &[usize] {
        &self.w
    }
}

impl Builder for L62Builder {
    fn next_edge(&mut self, state: &GameState) -> Option<usize> {
        let v = state.newest()?;
        if self.current != Some(v) {
            self.current = Some(v);
            self.pos = 0;
            if self.u.is_empty() {
                self.u.push(v);
                return None;
            }
        }
        if self.pos > 0 {
            let last = self.u[self.pos - 1];
            if state.color(last, v) == Some(Color::Red) {
                self.w.push(v);
                return None;
            }
        }
        if self.pos == self.u.len() {
            self.u.push(v);
            return None;
        }
        self.pos += 1;
        Some(self.u[self.pos - 1])
    }
}

/// Builder decisions computed from the state alone.
pub fn builder_strategy_l62(state: &GameState) -> Option<usize> {
    let mut b = L62Builder::new();
    replay_builder(&mut b, state)
}

/// Rebuilds a builder's memory from the transcript, then asks it for its
/// next move.
fn replay_builder(b: &mut dyn Builder, state: &GameState) -> Option<usize> {
    let mut shadow = GameState::new(state.s, state.n);
    for e in &state.transcript.events {
        match e.kind {
            EventKind::Vertex => {
                if shadow.vertex_count() > 0 {
                    let _ = b.next_edge(&shadow);
                }
                shadow.add_vertex();
            }
            EventKind::Edge => {
                let _ = b.next_edge(&shadow);
                shadow.add_edge(e.endpoints[0], e.endpoints[1], e.color.unwrap_or(Color::Blue));
            }
        }
    }
    b.next_edge(&shadow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WinKind {
    RedForwardStar,
    BlueClique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameOutcome {
    pub kind: WinKind,
    /// A star lists its centre first; a clique is sorted.
    pub witness: Vec<usize>,
    pub resources: Resources,
    pub transcript: Transcript,
}

impl GameOutcome {
    /// Rebuilds the red and blue graphs from the transcript and checks the
    /// witness and resource tallies against them.
    pub fn certify(&self, s: usize, n: usize) -> bool {
        let Ok(graphs) = colour_graphs(&self.transcript) else {
            return false;
        };
        let (red, blue, vertices) = graphs;
        let resources = Resources {
            vertices,
            red_edges: red.edge_count(),
            edges: red.edge_count() + blue.edge_count(),
        };
        if resources != self.resources {
            return false;
        }
        let w = &self.witness;
        if w.iter().any(|&x| x >= vertices) {
            return false;
        }
        match self.kind {
            WinKind::RedForwardStar => {
                w.len() == s && w[1..].iter().all(|&x| x > w[0] && red.has_edge(w[0], x)) && distinct(w)
            }
            WinKind::BlueClique => {
                w.len() == n - 1
                    && distinct(w)
                    && (0..w.len()).all(|i| (i + 1..w.len()).all(|j| blue.has_edge(w[i], w[j])))
            }
        }
    }
}

fn distinct(w: &[usize]) -> bool {
    let mut v = w.to_vec();
    v.sort_unstable();
    v.windows(2).all(|p| p[0] != p[1])
}

fn colour_graphs(t: &Transcript) -> Result<(Graph, Graph, usize)> {
    let vertices = t.events.iter().filter(|e| e.kind == EventKind::Vertex).count();
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for e in t.events.iter().filter(|e| e.kind == EventKind::Edge) {
        let &[a, b] = e.endpoints.as_slice() else {
            return Err(Error::Invalid("edge event needs two endpoints".into()));
        };
        match e.color {
            Some(Color::Red) => red.push((a, b)),
            Some(Color::Blue) => blue.push((a, b)),
            None => return Err(Error::Invalid("edge event without colour".into())),
        }
    }
    Ok((
        Graph::from_edges(vertices, red)?,
        Graph::from_edges(vertices, blue)?,
        vertices,
    ))
}

/// Rebuilds the final state of a transcript, checking that every edge joins
/// the newest vertex to earlier ones in increasing order.
pub fn replay(transcript: &Transcript, s: usize, n: usize) -> Result<GameState> {
    let mut state = GameState::new(s, n);
    let mut last: Option<usize> = None;
    for e in &transcript.events {
        match e.kind {
            EventKind::Vertex => {
                if e.endpoints != [state.vertex_count()] {
                    return Err(Error::Invalid(format!("vertex event {:?} out of order", e.endpoints)));
                }
                state.add_vertex();
                last = None;
            }
            EventKind::Edge => {
                let (&[a, b], Some(c)) = (e.endpoints.as_slice(), e.color) else {
                    return Err(Error::Invalid("malformed edge event".into()));
                };
                if Some(b) != state.newest() || a >= b || last.is_some_and(|l| a <= l) {
                    return Err(Error::Invalid(format!("edge ({a},{b}) breaks the protocol")));
                }
                state.add_edge(a, b, c);
                last = Some(a);
            }
        }
    }
    Ok(state)
}

enum Driven {
    Won(GameOutcome),
    Stopped,
}

/// Runs the protocol. `reveal` sees each new vertex; `paint` returning
/// `None` stops the game early.
fn drive(
    builder: &mut dyn Builder,
    s: usize,
    n: usize,
    limits: &GameLimits,
    mut reveal: impl FnMut(usize) -> Result<()>,
    mut paint: impl FnMut(&GameState, (usize, usize)) -> Result<Option<Color>>,
) -> Result<Driven> {
    if s < 3 || n < 3 {
        return Err(Error::Domain(format!("game needs s, n >= 3, got s={s}, n={n}")));
    }
    let mut state = GameState::new(s, n);
    reveal(state.add_vertex())?;
    let mut last: Option<usize> = None;
    loop {
        let v = state.newest().expect("a vertex was revealed");
        match builder.next_edge(&state) {
            None => {
                if state.vertex_count() >= limits.max_vertices {
                    return Err(Error::LimitExceeded {
                        vertices: state.vertex_count(),
                        edges: state.resources.edges,
                    });
                }
                reveal(state.add_vertex())?;
                last = None;
            }
            Some(a) => {
                if a >= v || last.is_some_and(|l| a <= l) {
                    return Err(Error::Invalid(format!("builder drew ({a},{v}) out of order")));
                }
                if state.resources.edges >= limits.max_edges {
                    return Err(Error::LimitExceeded {
                        vertices: state.vertex_count(),
                        edges: state.resources.edges,
                    });
                }
                let Some(c) = paint(&state, (a, v))? else {
                    return Ok(Driven::Stopped);
                };
                state.add_edge(a, v, c);
                last = Some(a);
                if let Some((kind, witness)) = state.win_through(a, v) {
                    return Ok(Driven::Won(GameOutcome {
                        kind,
                        witness,
                        resources: state.resources,
                        transcript: state.transcript,
                    }));
                }
            }
        }
    }
}

pub fn play_game(
    builder: &mut dyn Builder,
    painter: &mut dyn Painter,
    s: usize,
    n: usize,
    limits: &GameLimits,
) -> Result<GameOutcome> {
    match drive(
        builder,
        s,
        n,
        limits,
        |_| Ok(()),
        |st, e| Ok(Some(painter.paint(st, e))),
    )? {
        Driven::Won(o) => Ok(o),
        Driven::Stopped => unreachable!("painter always answers"),
    }
}

pub struct AllRed;
pub struct AllBlue;

impl Painter for AllRed {
    fn paint(&mut self, _: &GameState, _: (usize, usize)) -> Color {
        Color::Red
    }
}

impl Painter for AllBlue {
    fn paint(&mut self, _: &GameState, _: (usize, usize)) -> Color {
        Color::Blue
    }
}

pub struct RandomPainter {
    rng: ChaCha8Rng,
}

impl RandomPainter {
    pub fn new(seed: u64) -> Self {
        RandomPainter {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Painter for RandomPainter {
    fn paint(&mut self, _: &GameState, _: (usize, usize)) -> Color {
        if self.rng.gen_bool(0.5) {
            Color::Red
        } else {
            Color::Blue
        }
    }
}

/// Plays back recorded colours in order.
pub struct ReplayPainter {
    colors: Vec<Color>,
    next: usize,
}

impl ReplayPainter {
    pub fn new(colors: Vec<Color>) -> Self {
        ReplayPainter { colors, next: 0 }
    }
}

impl Painter for ReplayPainter {
    fn paint(&mut self, _: &GameState, _: (usize, usize)) -> Color {
        let c = self.colors.get(self.next).copied().unwrap_or(Color::Blue);
        self.next += 1;
        c
    }
}

/// The resource a minimax Painter tries to drive up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Vertices,
    RedEdges,
    Edges,
}

impl Objective {
    fn score(self, r: &Resources) -> (usize, usize) {
        let total = r.vertices + r.red_edges + r.edges;
        match self {
            Objective::Vertices => (r.vertices, total),
            Objective::RedEdges => (r.red_edges, total),
            Objective::Edges => (r.edges, total),
        }
    }
}

pub type BuilderFactory = Arc<dyn Fn() -> Box<dyn Builder> + Send + Sync>;

pub const MINIMAX_MAX: usize = 4;

/// Searches the full game tree against a deterministic Builder and picks
/// the colour whose best continuation maximises the objective.
pub struct MinimaxPainter {
    factory: BuilderFactory,
    objective: Objective,
    limits: GameLimits,
}

impl MinimaxPainter {
    pub fn new(factory: BuilderFactory, objective: Objective) -> Self {
        MinimaxPainter {
            factory,
            objective,
            limits: GameLimits::default(),
        }
    }

    /// Best score reachable after `prefix`; `None` when Painter escapes the caps.
    fn value(&self, s: usize, n: usize, prefix: &mut Vec<Color>) -> Option<(usize, usize)> {
        let mut b = (self.factory)();
        let mut idx = 0;
        let run = drive(
            b.as_mut(),
            s,
            n,
            &self.limits,
            |_| Ok(()),
            |_, _| {
                idx += 1;
                Ok(prefix.get(idx - 1).copied())
            },
        );
        match run {
            Ok(Driven::Won(o)) => Some(self.objective.score(&o.resources)),
            Ok(Driven::Stopped) => {
                let mut best = Some((0, 0));
                for c in [Color::Red, Color::Blue] {
                    prefix.push(c);
                    let v = self.value(s, n, prefix);
                    prefix.pop();
                    best = match (best, v) {
                        (_, None) | (None, _) => None,
                        (Some(x), Some(y)) => Some(x.max(y)),
                    };
                }
                best
            }
            Err(_) => None,
        }
    }
}

impl Painter for MinimaxPainter {
    fn paint(&mut self, state: &GameState, _: (usize, usize)) -> Color {
        assert!(
            state.s <= MINIMAX_MAX && state.n <= MINIMAX_MAX,
            "minimax painter is limited to s, n <= {MINIMAX_MAX}"
        );
        let mut prefix = state.transcript.colors();
        let mut pick = |c: Color| {
            prefix.push(c);
            let v = self.value(state.s, state.n, &mut prefix);
            prefix.pop();
            v.map_or((usize::MAX, usize::MAX), |x| x)
        };
        let red = pick(Color::Red);
        let blue = pick(Color::Blue);
        if blue >= red {
            Color::Blue
        } else {
            Color::Red
        }
    }
}

/// `ceil((v+1) alpha^-r (1-alpha)^(r-m))` with the U/W Builder's caps.
pub fn reduction_host_size(s: usize, n: usize, alpha: Ratio<u64>) -> Result<BigUint> {
    let a = check_alpha(alpha)?;
    let caps = l62_caps(s, n);
    let one = BigRational::one();
    let value = BigRational::from_integer(BigInt::from(caps.vertices + 1))
        * (one.clone() / &a).pow(caps.red_edges as i32)
        * (one.clone() / (one - &a)).pow((caps.edges - caps.red_edges) as i32);
    let ceil = value.ceil().to_integer();
    Ok(ceil.magnitude().clone())
}

fn check_alpha(alpha: Ratio<u64>) -> Result<BigRational> {
    let zero = Ratio::new(0, 1);
    if alpha <= zero || alpha > Ratio::new(1, 2) {
        return Err(Error::Domain(format!("alpha = {alpha} must lie in (0, 1/2]")));
    }
    Ok(BigRational::new((*alpha.numer()).into(), (*alpha.denom()).into()))
}

/// One Painter decision in a host reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub edge: (usize, usize),
    pub color: Color,
    pub candidates_before: usize,
    pub hits: usize,
    pub candidates_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HostWitness {
    /// `apex` with every triple `{apex, x, y}` for `x, y` in `clique`.
    Link { apex: usize, clique: Vec<usize> },
    /// A set spanning no triple.
    Hole { vertices: Vec<usize> },
}

impl HostWitness {
    /// Direct triple lookups in the host.
    pub fn certify(&self, host: &ThreeGraph, s: usize, n: usize) -> bool {
        let ok_ids = |v: &[usize]| distinct(v) && v.iter().all(|&x| x < host.vertex_count());
        match self {
            HostWitness::Link { apex, clique } => {
                let mut all = clique.clone();
                all.push(*apex);
                clique.len() == s
                    && ok_ids(&all)
                    && (0..s).all(|i| (i + 1..s).all(|j| host.has_triple(*apex, clique[i], clique[j])))
            }
            HostWitness::Hole { vertices } => {
                let k = vertices.len();
                k == n
                    && ok_ids(vertices)
                    && (0..k).all(|i| {
                        (i + 1..k).all(|j| (j + 1..k).all(|l| !host.has_triple(vertices[i], vertices[j], vertices[l])))
                    })
            }
        }
    }
}

/// Threshold colouring of `{vi, vj}`: red iff at least `alpha |S|` of the
/// candidates `w` close a triple. `s_set` is narrowed to the consistent
/// candidates.
pub fn painter_threshold(
    host: &ThreeGraph,
    s_set: &mut VertexSet,
    edge: (usize, usize),
    alpha: Ratio<u64>,
) -> Result<ReductionStep> {
    let before = s_set.len();
    if before == 0 {
        return Err(Error::EmptyCandidates);
    }
    let link = host.pair_link(edge.0, edge.1);
    let hit_set = s_set.intersection(&link);
    let hits = hit_set.len();
    let red = hits as u128 * *alpha.denom() as u128 >= *alpha.numer() as u128 * before as u128;
    if red {
        *s_set = hit_set;
    } else {
        s_set.difference_with(&link);
    }
    Ok(ReductionStep {
        edge,
        color: if red { Color::Red } else { Color::Blue },
        candidates_before: before,
        hits,
        candidates_after: s_set.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    #[serde(with = "crate::decimal")]
    pub required: BigUint,
    /// Host vertex behind each game vertex, then the final pick.
    pub chosen: Vec<usize>,
    pub outcome: GameOutcome,
    pub steps: Vec<ReductionStep>,
    pub witness: HostWitness,
}

/// Plays the U/W Builder against the threshold Painter on `host` and lifts
/// the game win to a link or hole in the host.
pub fn reduce_on_host(host: &ThreeGraph, s: usize, n: usize, alpha: Ratio<u64>) -> Result<Reduction> {
    let required = reduction_host_size(s, n, alpha)?;
    let actual = host.vertex_count();
    if BigUint::from(actual) < required {
        return Err(Error::HostTooSmall {
            required: required.to_u64().unwrap_or(u64::MAX),
            actual,
        });
    }
    let caps = l62_caps(s, n);
    let limits = GameLimits {
        max_vertices: caps.vertices,
        max_edges: caps.edges,
    };
    let mut cand = VertexSet::full(actual);
    let mut chosen: Vec<usize> = Vec::new();
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut builder = L62Builder::new();
    let driven = {
        let cand = std::cell::RefCell::new(&mut cand);
        let chosen = std::cell::RefCell::new(&mut chosen);
        drive(
            &mut builder,
            s,
            n,
            &limits,
            |_| {
                let mut c = cand.borrow_mut();
                let pick = c.first().ok_or(Error::CandidateUnderflow {
                    steps: steps_len(&chosen),
                })?;
                c.remove(pick);
                chosen.borrow_mut().push(pick);
                Ok(())
            },
            |_, (a, b)| {
                let (ha, hb) = {
                    let ch = chosen.borrow();
                    (ch[a], ch[b])
                };
                let mut c = cand.borrow_mut();
                let step = painter_threshold(host, &mut c, (ha, hb), alpha)?;
                assert!(shrink_ok(&step, alpha), "candidate ledger violated at {step:?}");
                steps.push(step.clone());
                Ok(Some(step.color))
            },
        )
    };
    let outcome = match driven {
        Ok(Driven::Won(o)) => o,
        Ok(Driven::Stopped) => unreachable!("threshold painter always answers"),
        Err(Error::LimitExceeded { .. }) => {
            return Err(Error::Invalid("builder exceeded its proven caps".into()));
        }
        Err(e) => return Err(e),
    };
    let last = cand.first().ok_or(Error::CandidateUnderflow { steps: steps.len() })?;
    chosen.push(last);
    let w = &outcome.witness;
    let witness = match outcome.kind {
        WinKind::RedForwardStar => {
            let mut clique: Vec<usize> = w[1..].iter().map(|&x| chosen[x]).collect();
            clique.push(last);
            HostWitness::Link {
                apex: chosen[w[0]],
                clique,
            }
        }
        WinKind::BlueClique => {
            let mut vertices: Vec<usize> = w.iter().map(|&x| chosen[x]).collect();
            vertices.push(last);
            HostWitness::Hole { vertices }
        }
    };
    Ok(Reduction {
        required,
        chosen,
        outcome,
        steps,
        witness,
    })
}

fn steps_len(chosen: &std::cell::RefCell<&mut Vec<usize>>) -> usize {
    chosen.borrow().len()
}

/// Red keeps at least `alpha |S|`, blue at least `(1 - alpha) |S|`.
fn shrink_ok(step: &ReductionStep, alpha: Ratio<u64>) -> bool {
    let (num, den) = (*alpha.numer() as u128, *alpha.denom() as u128);
    let before = step.candidates_before as u128;
    let after = step.candidates_after as u128 * den;
    match step.color {
        Color::Red => after >= num * before,
        Color::Blue => after >= (den - num) * before,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperEval {
    pub s: usize,
    pub n: usize,
    /// `(v+1) n^r (1 - 1/n)^(r-m)` with the U/W Builder's caps.
    pub raw: LogValue,
    /// `(2n)^(sn)`.
    pub cap: LogValue,
    pub holds: bool,
}

pub fn ramsey_upper_eval(s: usize, n: usize) -> Result<UpperEval> {
    if s < 3 || n < 3 {
        return Err(Error::Domain(format!("upper bound needs s, n >= 3, got s={s}, n={n}")));
    }
    let c = l62_caps(s, n);
    let nf = n as f64;
    let raw = LogValue::from_ln(
        ((c.vertices + 1) as f64).ln() + c.red_edges as f64 * nf.ln()
            - (c.edges - c.red_edges) as f64 * (1.0 - 1.0 / nf).ln(),
    );
    let cap = LogValue::from_ln((s * n) as f64 * (2.0 * nf).ln());
    Ok(UpperEval {
        s,
        n,
        raw,
        cap,
        holds: raw.ln() <= cap.ln(),
    })
}
