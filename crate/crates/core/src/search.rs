//! Unidirectional and bidirectional BFS with exact exploration-cost accounting.
//!
//! A step expands one complete BFS layer and costs the sum of the degrees of
//! the expanded vertices. The layer discovered last by the winning side is
//! never expanded and costs nothing.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// What a strategy sees before each decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchState {
    /// Anticipated cost of the next forward step (degree sum of the frontier).
    pub forward_cost: u64,
    pub backward_cost: u64,
    pub forward_steps: usize,
    pub backward_steps: usize,
}

/// Decides the direction of the next complete exploration step.
pub trait AlternationStrategy {
    fn choose(&mut self, state: &SearchState) -> Direction;
}

/// Expands the side whose next step is cheaper; forward on ties.
#[derive(Debug, Clone, Copy, Default)]
pub struct Balanced;

impl AlternationStrategy for Balanced {
    fn choose(&mut self, state: &SearchState) -> Direction {
        if state.forward_cost <= state.backward_cost {
            Direction::Forward
        } else {
            Direction::Backward
        }
    }
}

pub fn balanced_strategy() -> Balanced {
    Balanced
}

/// Always forward: plain BFS from `s` that stops once `t` is discovered.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unidirectional;

impl AlternationStrategy for Unidirectional {
    fn choose(&mut self, _: &SearchState) -> Direction {
        Direction::Forward
    }
}

/// Forward for the first `k` steps, backward afterwards; meets at layer
/// `min(k, d)`.
#[derive(Debug, Clone, Copy)]
pub struct MeetAt(pub usize);

impl AlternationStrategy for MeetAt {
    fn choose(&mut self, state: &SearchState) -> Direction {
        if state.forward_steps < self.0 {
            Direction::Forward
        } else {
            Direction::Backward
        }
    }
}

/// Named strategy, as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    Balanced,
    Unidirectional,
    MeetAt(usize),
}

impl AlternationStrategy for StrategyKind {
    fn choose(&mut self, state: &SearchState) -> Direction {
        match self {
            StrategyKind::Balanced => Balanced.choose(state),
            StrategyKind::Unidirectional => Unidirectional.choose(state),
            StrategyKind::MeetAt(k) => MeetAt(*k).choose(state),
        }
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "balanced" => Ok(StrategyKind::Balanced),
            "unidirectional" => Ok(StrategyKind::Unidirectional),
            _ => s
                .strip_prefix("meet-at:")
                .and_then(|k| k.parse().ok())
                .map(StrategyKind::MeetAt)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "unknown strategy '{s}' (expected balanced, unidirectional or meet-at:<k>)"
                    ))
                }),
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyKind::Balanced => write!(f, "balanced"),
            StrategyKind::Unidirectional => write!(f, "unidirectional"),
            StrategyKind::MeetAt(k) => write!(f, "meet-at:{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub dir: Direction,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BidiResult {
    pub s: usize,
    pub t: usize,
    pub d: usize,
    pub cost: u64,
    pub meeting_layer: usize,
    pub trace: Vec<TraceStep>,
    /// Sizes of the forward layers discovered, starting with `{s}`.
    pub forward_layers: Vec<usize>,
    pub backward_layers: Vec<usize>,
}

/// Reusable scratch space for searches on one graph. Each worker owns one.
pub struct BidiSearch<'g> {
    graph: &'g Graph,
    forward_mark: Vec<u32>,
    backward_mark: Vec<u32>,
    epoch: u32,
}

struct Side {
    frontier: Vec<u32>,
    frontier_cost: u64,
    steps: usize,
    layers: Vec<usize>,
}

impl Side {
    fn seed(graph: &Graph, v: usize) -> Self {
        Side { frontier: vec![v as u32], frontier_cost: graph.deg(v) as u64, steps: 0, layers: vec![1] }
    }
}

impl<'g> BidiSearch<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        BidiSearch { graph, forward_mark: vec![0; graph.n()], backward_mark: vec![0; graph.n()], epoch: 0 }
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.forward_mark.fill(0);
            self.backward_mark.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    pub fn run(&mut self, s: usize, t: usize, strategy: &mut dyn AlternationStrategy) -> Result<BidiResult> {
        let graph = self.graph;
        graph.check(s)?;
        graph.check(t)?;
        if s == t {
            return Ok(BidiResult {
                s,
                t,
                d: 0,
                cost: 0,
                meeting_layer: 0,
                trace: Vec::new(),
                forward_layers: vec![1],
                backward_layers: vec![1],
            });
        }
        let epoch = self.next_epoch();
        self.forward_mark[s] = epoch;
        self.backward_mark[t] = epoch;
        let mut fwd = Side::seed(graph, s);
        let mut bwd = Side::seed(graph, t);
        let mut trace = Vec::new();
        let mut cost = 0u64;

        loop {
            let state = SearchState {
                forward_cost: fwd.frontier_cost,
                backward_cost: bwd.frontier_cost,
                forward_steps: fwd.steps,
                backward_steps: bwd.steps,
            };
            let dir = strategy.choose(&state);
            let (side, own, other) = match dir {
                Direction::Forward => (&mut fwd, &mut self.forward_mark, &self.backward_mark),
                Direction::Backward => (&mut bwd, &mut self.backward_mark, &self.forward_mark),
            };
            let step_cost = side.frontier_cost;
            let mut next = Vec::new();
            let mut next_cost = 0u64;
            let mut met = false;
            for &v in &side.frontier {
                for &u in graph.neighbors(v as usize) {
                    let ui = u as usize;
                    if own[ui] != epoch {
                        own[ui] = epoch;
                        next.push(u);
                        next_cost += graph.deg(ui) as u64;
                        met |= other[ui] == epoch;
                    }
                }
            }
            cost += step_cost;
            trace.push(TraceStep { dir, cost: step_cost });
            side.steps += 1;
            side.layers.push(next.len());
            side.frontier = next;
            side.frontier_cost = next_cost;

            if met {
                return Ok(BidiResult {
                    s,
                    t,
                    d: fwd.steps + bwd.steps,
                    cost,
                    meeting_layer: fwd.steps,
                    trace,
                    forward_layers: fwd.layers,
                    backward_layers: bwd.layers,
                });
            }
            if side.frontier.is_empty() {
                return Err(Error::InvalidParameter(format!("vertices {s} and {t} are not connected")));
            }
        }
    }
}

pub fn bidirectional_bfs(
    graph: &Graph,
    s: usize,
    t: usize,
    strategy: &mut dyn AlternationStrategy,
) -> Result<BidiResult> {
    BidiSearch::new(graph).run(s, t, strategy)
}

/// BFS distances from `source`; `u32::MAX` marks unreachable vertices.
pub fn distances(graph: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; graph.n()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v];
        for &u in graph.neighbors(v) {
            let u = u as usize;
            if dist[u] == u32::MAX {
                dist[u] = dv + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

pub fn bfs_distance(graph: &Graph, s: usize, t: usize) -> Result<usize> {
    graph.check(s)?;
    graph.check(t)?;
    if s == t {
        return Ok(0);
    }
    let mut dist = vec![u32::MAX; graph.n()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        for &u in graph.neighbors(v) {
            let u = u as usize;
            if dist[u] == u32::MAX {
                dist[u] = dist[v] + 1;
                if u == t {
                    return Ok(dist[u] as usize);
                }
                queue.push_back(u);
            }
        }
    }
    Err(Error::InvalidParameter(format!("vertices {s} and {t} are not connected")))
}

/// Per-step exploration costs of a pair, independent of any particular run.
///
/// Steps are 1-based: `cs(i)` is the degree sum of layer `i - 1` around `s`,
/// `ct(i)` the degree sum of layer `d - i` around `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerCostProfile {
    pub d: usize,
    pub m: u64,
    /// `cs[i - 1] = c_s(i)` for `i in 1..=d`.
    pub cs: Vec<u64>,
    /// `ct[i - 1] = c_t(i)` for `i in 1..=d`.
    pub ct: Vec<u64>,
    /// `layer_sizes_s[i - 1] = |layer(s, i - 1)|`.
    pub layer_sizes_s: Vec<usize>,
    /// `layer_sizes_t[i - 1] = |layer(t, d - i)|`.
    pub layer_sizes_t: Vec<usize>,
}

impl LayerCostProfile {
    /// Profile from explicit cost arrays (layer sizes left empty).
    pub fn from_costs(cs: Vec<u64>, ct: Vec<u64>, m: u64) -> Result<Self> {
        if cs.is_empty() || cs.len() != ct.len() {
            return Err(Error::InvalidParameter(format!(
                "cost arrays must be nonempty and equally long ({} vs {})",
                cs.len(),
                ct.len()
            )));
        }
        if cs.iter().chain(&ct).any(|&c| c == 0) {
            return Err(Error::InvalidParameter("step costs must be positive".into()));
        }
        Ok(LayerCostProfile { d: cs.len(), m, cs, ct, layer_sizes_s: Vec::new(), layer_sizes_t: Vec::new() })
    }

    #[inline]
    pub fn cs(&self, i: usize) -> u64 {
        self.cs[i - 1]
    }

    #[inline]
    pub fn ct(&self, i: usize) -> u64 {
        self.ct[i - 1]
    }

    /// `c_s([i, j])`; empty ranges cost 0.
    pub fn cs_range(&self, i: usize, j: usize) -> u64 {
        if i > j {
            return 0;
        }
        self.cs[i - 1..j].iter().sum()
    }

    pub fn ct_range(&self, i: usize, j: usize) -> u64 {
        if i > j {
            return 0;
        }
        self.ct[i - 1..j].iter().sum()
    }

    /// Cost of the search that meets at layer `k`: `c_s([1,k]) + c_t([k+1,d])`.
    pub fn meeting_cost(&self, k: usize) -> u64 {
        self.cs_range(1, k) + self.ct_range(k + 1, self.d)
    }

    /// The profile of the reversed pair `(t, s)`.
    pub fn reversed(&self) -> Self {
        let rev = |v: &[u64]| v.iter().rev().copied().collect::<Vec<_>>();
        LayerCostProfile {
            d: self.d,
            m: self.m,
            cs: rev(&self.ct),
            ct: rev(&self.cs),
            layer_sizes_s: self.layer_sizes_t.iter().rev().copied().collect(),
            layer_sizes_t: self.layer_sizes_s.iter().rev().copied().collect(),
        }
    }
}

fn layer_degree_sums(graph: &Graph, dist: &[u32], depth: usize) -> (Vec<u64>, Vec<usize>) {
    let mut sums = vec![0u64; depth];
    let mut sizes = vec![0usize; depth];
    for (v, &dv) in dist.iter().enumerate() {
        let dv = dv as usize;
        if dv < depth {
            sums[dv] += graph.deg(v) as u64;
            sizes[dv] += 1;
        }
    }
    (sums, sizes)
}

pub fn layer_cost_profile(graph: &Graph, s: usize, t: usize) -> Result<LayerCostProfile> {
    graph.check(s)?;
    graph.check(t)?;
    if s == t {
        return Err(Error::SamePair(s));
    }
    let dist_s = distances(graph, s);
    if dist_s[t] == u32::MAX {
        return Err(Error::InvalidParameter(format!("vertices {s} and {t} are not connected")));
    }
    let d = dist_s[t] as usize;
    let dist_t = distances(graph, t);
    let (cs, sizes_s) = layer_degree_sums(graph, &dist_s, d);
    let (mut ct, mut sizes_t) = layer_degree_sums(graph, &dist_t, d);
    // ct[i - 1] = degree sum of layer d - i around t
    ct.reverse();
    sizes_t.reverse();
    Ok(LayerCostProfile { d, m: graph.m() as u64, cs, ct, layer_sizes_s: sizes_s, layer_sizes_t: sizes_t })
}

/// Cheapest meeting layer over all `k in 0..=d` (smallest `k` on ties) and its cost.
pub fn optimal_meeting_cost(profile: &LayerCostProfile) -> (u64, usize) {
    let d = profile.d;
    let mut suffix: u64 = profile.ct.iter().sum();
    let mut prefix = 0u64;
    let mut best = (suffix, 0);
    for k in 1..=d {
        prefix += profile.cs(k);
        suffix -= profile.ct(k);
        let cost = prefix + suffix;
        if cost < best.0 {
            best = (cost, k);
        }
    }
    best
}
