//! Lower-bound instances: two mirrored trees whose deepest layers are joined
//! by a perfect matching.
//!
//! From either root the search space grows by `b` for `d1` layers and by `b⁺`
//! for the following `d2` layers, so the most expensive layers sit in the
//! middle and every alternation strategy has to expand one of them.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::rho_max;
use crate::graph::Graph;
use crate::search::{layer_cost_profile, LayerCostProfile};

pub const DEFAULT_VERTEX_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdversarialSpec {
    pub alpha: f64,
    pub b: f64,
    pub b_plus: f64,
    /// Target ratio of the non-expanding middle to the expanding prefix.
    pub rho: f64,
    /// Depth of each tree.
    pub depth: usize,
    /// Length of a path hung off the deepest layer of the `s` tree, diluting
    /// that layer's share of the edges. `None` for no path.
    pub append_path: Option<usize>,
    pub vertex_budget: u64,
}

impl AdversarialSpec {
    pub fn new(alpha: f64, b: f64, b_plus: f64, rho: f64, depth: usize) -> Self {
        AdversarialSpec { alpha, b, b_plus, rho, depth, append_path: None, vertex_budget: DEFAULT_VERTEX_BUDGET }
    }

    /// Spec sitting exactly on the threshold `ρ = ρ_max(α, b, b⁺)`.
    pub fn at_threshold(alpha: f64, b: f64, b_plus: f64, depth: usize) -> Self {
        Self::new(alpha, b, b_plus, rho_max(alpha, b, b_plus), depth)
    }

    pub fn d1(&self) -> usize {
        ((1.0 - self.rho) * self.depth as f64).round() as usize
    }

    pub fn d2(&self) -> usize {
        self.depth.saturating_sub(self.d1())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if !(self.b > 1.0 && self.b_plus > self.b) {
            return bad(format!("requires b_plus > b > 1, got b = {}, b_plus = {}", self.b, self.b_plus));
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return bad(format!("rho must lie in [0, 1], got {}", self.rho));
        }
        let threshold = rho_max(self.alpha, self.b, self.b_plus);
        if self.rho < threshold * (1.0 - 1e-12) {
            return bad(format!("rho = {} is below rho_max = {threshold}; the construction needs rho >= rho_max", self.rho));
        }
        if self.d1() < 1 || self.d2() < 1 {
            return bad(format!(
                "depth {} with rho {} gives d1 = {}, d2 = {}; both must be at least 1",
                self.depth,
                self.rho,
                self.d1(),
                self.d2()
            ));
        }
        Ok(())
    }

    /// Target layer sizes `1, L_1, ..., L_depth` of one tree.
    pub fn layer_sizes(&self) -> Result<Vec<u64>> {
        if self.b_plus < 1.0 || self.b < 1.0 {
            return Err(Error::InvalidParameter("infeasible branching: target ratio below 1".into()));
        }
        let d1 = self.d1();
        let mut sizes = vec![1u64];
        for i in 1..=self.depth {
            let target = self.b.powi(i.min(d1) as i32) * self.b_plus.powi(i.saturating_sub(d1) as i32);
            let prev = *sizes.last().unwrap();
            let min_growth = (self.b * prev as f64 - 1e-9).ceil() as u64;
            let size = (target.round() as u64).max(min_growth).max(prev);
            if size > self.vertex_budget {
                return Err(Error::BudgetExceeded { needed: size, budget: self.vertex_budget });
            }
            sizes.push(size);
        }
        Ok(sizes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchStep {
    pub layer: usize,
    pub parents: u64,
    pub children: u64,
    pub min_per_parent: u64,
    pub max_per_parent: u64,
}

#[derive(Debug, Clone)]
pub struct AdversarialInstance {
    pub spec: AdversarialSpec,
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub realized_profile: LayerCostProfile,
    pub realized_d1: usize,
    pub realized_d2: usize,
    pub layer_sizes: Vec<u64>,
    pub branching_sequence: Vec<BranchStep>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sidecar {
    pub s: usize,
    pub t: usize,
    pub d1: usize,
    pub d2: usize,
    pub realized_rho: f64,
    pub branching_sequence: Vec<BranchStep>,
    pub spec: AdversarialSpec,
    pub n: usize,
    pub m: usize,
}

impl AdversarialInstance {
    pub fn realized_rho(&self) -> f64 {
        self.realized_d2 as f64 / self.spec.depth as f64
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            s: self.s,
            t: self.t,
            d1: self.realized_d1,
            d2: self.realized_d2,
            realized_rho: self.realized_rho(),
            branching_sequence: self.branching_sequence.clone(),
            spec: self.spec.clone(),
            n: self.graph.n(),
            m: self.graph.m(),
        }
    }

    /// Writes `<path>` as an edge list and `<path>.json` as the sidecar.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        self.graph.save_edge_list(path)?;
        let side = sidecar_path(path);
        let mut f = File::create(&side).map_err(|e| Error::io(&side, e))?;
        serde_json::to_writer_pretty(&mut f, &self.sidecar())?;
        writeln!(f).map_err(|e| Error::io(&side, e))?;
        Ok(())
    }
}

pub fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".json");
    os.into()
}

pub fn generate(spec: &AdversarialSpec) -> Result<AdversarialInstance> {
    spec.validate()?;
    let sizes = spec.layer_sizes()?;
    let tree_vertices: u64 = sizes.iter().sum();
    let path_len = spec.append_path.unwrap_or(0) as u64;
    let needed = 2 * tree_vertices + path_len;
    if needed > spec.vertex_budget {
        return Err(Error::BudgetExceeded { needed, budget: spec.vertex_budget });
    }
    let tree_n = tree_vertices as usize;
    let depth = spec.depth;

    // Tree in BFS order; layer i occupies a contiguous id range.
    let mut starts = vec![0usize];
    for &size in &sizes {
        starts.push(starts.last().unwrap() + size as usize);
    }
    let mut tree_edges = Vec::with_capacity(tree_n - 1);
    let mut branching = Vec::with_capacity(depth);
    for i in 1..=depth {
        let parents = sizes[i - 1];
        let children = sizes[i];
        let base = children / parents;
        let extra = children % parents;
        let mut child = starts[i];
        for p in 0..parents {
            let count = base + u64::from(p < extra);
            for _ in 0..count {
                tree_edges.push((starts[i - 1] + p as usize, child));
                child += 1;
            }
        }
        branching.push(BranchStep {
            layer: i,
            parents,
            children,
            min_per_parent: base,
            max_per_parent: base + u64::from(extra > 0),
        });
    }

    let mut edges = Vec::with_capacity(2 * tree_edges.len() + sizes[depth] as usize + path_len as usize);
    edges.extend(tree_edges.iter().copied());
    edges.extend(tree_edges.iter().map(|&(u, v)| (u + tree_n, v + tree_n)));
    for leaf in starts[depth]..starts[depth + 1] {
        edges.push((leaf, leaf + tree_n));
    }
    let mut n = 2 * tree_n;
    if path_len > 0 {
        let mut prev = starts[depth];
        for _ in 0..path_len {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
    }
    let graph = Graph::from_edges(n, edges);
    let (s, t) = (0, tree_n);
    let realized_profile = layer_cost_profile(&graph, s, t)?;

    let midpoint = (spec.b * spec.b_plus).sqrt();
    let realized_d1 = sizes.windows(2).take_while(|w| (w[1] as f64) < midpoint * w[0] as f64).count();

    Ok(AdversarialInstance {
        spec: spec.clone(),
        graph,
        s,
        t,
        realized_profile,
        realized_d1,
        realized_d2: depth - realized_d1,
        layer_sizes: sizes,
        branching_sequence: branching,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepCheck {
    /// Compares `c_s(step + 1)` against `c_s(step)`.
    pub step: usize,
    pub ratio: f64,
    pub lower: f64,
    pub upper: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<StepCheck>,
    /// `c_s(depth) / 2m`.
    pub dilution: f64,
    pub diluted: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub tolerance: f64,
    pub min_fraction: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tolerance: 0.1, min_fraction: 0.1 }
    }
}

/// Re-derives the profile and checks the growth pattern step by step. The
/// first step (out of the root, which has no parent edge) gets no upper bound.
pub fn verify_profile(instance: &AdversarialInstance, options: VerifyOptions) -> VerifyReport {
    let spec = &instance.spec;
    let tol = options.tolerance;
    let profile = layer_cost_profile(&instance.graph, instance.s, instance.t).expect("generated pair is connected");
    let d1 = spec.d1();
    let mut checks = Vec::new();
    for k in 1..spec.depth {
        let ratio = profile.cs(k + 1) as f64 / profile.cs(k) as f64;
        let lower = spec.b * (1.0 - tol);
        let upper = (k >= d1 && k > 1).then_some(spec.b_plus * (1.0 + tol));
        let pass = ratio >= lower && upper.is_none_or(|u| ratio <= u);
        checks.push(StepCheck { step: k, ratio, lower, upper, pass });
    }
    let dilution = profile.cs(spec.depth) as f64 / (2.0 * instance.graph.m() as f64);
    let diluted = dilution < options.min_fraction;
    let pass = checks.iter().all(|c| c.pass) && (spec.append_path.is_some() || !diluted);
    VerifyReport { checks, dilution, diluted, pass }
}
