//! Experiment pipeline: sample start–destination pairs, measure balanced
//! bidirectional cost, evaluate expansion parameters, aggregate per graph and
//! per corpus, and sweep the analysis parameters.
//!
//! Per-pair work runs on the rayon pool. Results are collected in pair-index
//! order and reduced sequentially, so every output byte is independent of the
//! number of worker threads.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{
    alpha_breakpoints, compute_params, landmarks, optimize_alpha, ExpansionParams, Objective,
};
use crate::graph::{load_graph, Graph, GraphMeta, ParseOptions};
use crate::report::{self, Band, ReportRow};
use crate::rng::seeded;
use crate::scalar::Base;
use crate::search::{balanced_strategy, layer_cost_profile, optimal_meeting_cost, BidiResult, BidiSearch, LayerCostProfile};

pub const DEFAULT_K: usize = 250;
pub const DEFAULT_BANDS: [f64; 2] = [0.8, 0.85];
pub const DEFAULT_SWEEP_ALPHAS: [f64; 4] = [0.0, 0.1, 0.5, 0.9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairStub {
    pub index: usize,
    pub s: usize,
    pub t: usize,
}

/// `k` ordered pairs `(s, t)` with `s != t`, uniform and with replacement.
pub fn sample_pairs(graph: &Graph, k: usize, seed: u64) -> Result<Vec<PairStub>> {
    let n = graph.n() as u64;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("pair sampling needs at least 2 vertices, graph has {n}")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut rng = seeded(seed);
    Ok((0..k)
        .map(|index| {
            // Uniform over the n(n-1) ordered pairs: draw t from the n-1
            // vertices other than s. Ranges are u64 so the stream does not
            // depend on the platform's usize.
            let s = rng.gen_range(0..n);
            let mut t = rng.gen_range(0..n - 1);
            if t >= s {
                t += 1;
            }
            PairStub { index, s: s as usize, t: t as usize }
        })
        .collect())
}

/// Balanced bidirectional cost of one pair.
pub fn measure_pair(graph: &Graph, s: usize, t: usize) -> Result<(u64, BidiResult)> {
    let mut search = BidiSearch::new(graph);
    measure_with(&mut search, s, t)
}

fn measure_with(search: &mut BidiSearch<'_>, s: usize, t: usize) -> Result<(u64, BidiResult)> {
    let result = search.run(s, t, &mut balanced_strategy())?;
    Ok((result.cost, result))
}

/// Which α values each pair is evaluated at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaPolicy {
    Fixed(Vec<f64>),
    /// Every breakpoint of the pair's own cost profile.
    Breakpoints,
    /// The breakpoint chosen by [`optimize_alpha`].
    Optimize(Objective),
}

impl Default for AlphaPolicy {
    fn default() -> Self {
        AlphaPolicy::Optimize(Objective::MinRhoGap)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub k: usize,
    pub seed: u64,
    pub b: Base,
    pub alpha_policy: AlphaPolicy,
    /// Largest α the optimizer may pick.
    pub alpha_cap: Option<f64>,
    /// `[lo, hi]`: exponents above `hi` are linear, below `lo` sublinear.
    pub bands: [f64; 2],
    /// Skip graphs whose results already exist in the output directory.
    pub resume: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            k: DEFAULT_K,
            seed: 0,
            b: Base::default(),
            alpha_policy: AlphaPolicy::default(),
            alpha_cap: None,
            bands: DEFAULT_BANDS,
            resume: false,
        }
    }
}

impl Config {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: Config = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if !self.b.is_above_one() {
            return Err(Error::InvalidParameter(format!("b must exceed 1, got {}", self.b)));
        }
        let [lo, hi] = self.bands;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidParameter(format!("bands must satisfy lo <= hi, got [{lo}, {hi}]")));
        }
        if let AlphaPolicy::Fixed(alphas) = &self.alpha_policy {
            if alphas.is_empty() {
                return Err(Error::InvalidParameter("fixed alpha list is empty".into()));
            }
            if let Some(a) = alphas.iter().find(|a| !(**a >= 0.0 && **a < 1.0)) {
                return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1), got {a}")));
            }
        }
        Ok(())
    }
}

/// Outcome of one `(pair, α)` evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub alpha: f64,
    pub params: Option<ExpansionParams<f64>>,
    /// Reason the parameters are missing.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalAlpha {
    pub objective: Objective,
    pub alpha: Option<f64>,
    pub params: Option<ExpansionParams<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairSample {
    pub index: usize,
    pub s: usize,
    pub t: usize,
    pub d: usize,
    pub measured_cost: u64,
    pub optimal_meeting_cost: u64,
    /// `measured_cost <= d * optimal_meeting_cost`.
    pub cost_bound_holds: bool,
    pub params_at: Vec<Evaluation>,
    /// Filled under the optimize policy, one entry per objective.
    pub optimal_alpha_results: Vec<OptimalAlpha>,
}

impl PairSample {
    /// Evaluations that produced parameters.
    pub fn feasible(&self) -> impl Iterator<Item = &ExpansionParams<f64>> {
        self.params_at.iter().filter_map(|e| e.params.as_ref())
    }
}

fn evaluate(profile: &LayerCostProfile, alpha: f64, b: Base) -> Evaluation {
    match compute_params::<f64>(profile, alpha, b) {
        Ok(p) => Evaluation { alpha, params: Some(p), error: None },
        Err(e) => Evaluation { alpha, params: None, error: Some(e.to_string()) },
    }
}

fn analyze_pair(search: &mut BidiSearch<'_>, graph: &Graph, stub: PairStub, config: &Config) -> Result<PairSample> {
    let (cost, result) = measure_with(search, stub.s, stub.t)?;
    let profile = layer_cost_profile(graph, stub.s, stub.t)?;
    if profile.d != result.d {
        return Err(Error::Internal(format!(
            "search distance {} disagrees with profile distance {} for ({}, {})",
            result.d, profile.d, stub.s, stub.t
        )));
    }
    let (opt_cost, _) = optimal_meeting_cost(&profile);
    let mut params_at = Vec::new();
    let mut optimal_alpha_results = Vec::new();
    match &config.alpha_policy {
        AlphaPolicy::Fixed(alphas) => {
            params_at.extend(alphas.iter().map(|&a| evaluate(&profile, a, config.b)));
        }
        AlphaPolicy::Breakpoints => {
            params_at.extend(alpha_breakpoints::<f64>(&profile).into_iter().map(|a| evaluate(&profile, a, config.b)));
        }
        AlphaPolicy::Optimize(primary) => {
            for objective in [Objective::MinExponent, Objective::MinRhoGap] {
                let found = optimize_alpha::<f64>(&profile, config.b, objective, config.alpha_cap);
                let (alpha, params) = match &found {
                    Ok((a, p)) => (Some(*a), Some(*p)),
                    Err(_) => (None, None),
                };
                if objective == *primary {
                    params_at.push(match found {
                        Ok((a, p)) => Evaluation { alpha: a, params: Some(p), error: None },
                        Err(e) => Evaluation { alpha: f64::NAN, params: None, error: Some(e.to_string()) },
                    });
                }
                optimal_alpha_results.push(OptimalAlpha { objective, alpha, params });
            }
        }
    }
    Ok(PairSample {
        index: stub.index,
        s: stub.s,
        t: stub.t,
        d: profile.d,
        measured_cost: cost,
        optimal_meeting_cost: opt_cost,
        cost_bound_holds: cost as u128 <= profile.d as u128 * opt_cost as u128,
        params_at,
        optimal_alpha_results,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    /// `(pair, α)` evaluations attempted.
    pub evaluations: usize,
    /// Evaluations that produced parameters.
    pub feasible: usize,
    /// Feasible evaluations whose cheap regions cover the whole distance.
    pub covered: usize,
    /// Pairs without any feasible evaluation.
    pub infeasible_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphReport {
    pub graph_id: String,
    pub meta: GraphMeta,
    pub k: usize,
    pub seed: u64,
    pub b: Base,
    /// Mean measured cost.
    pub c_hat: f64,
    /// `ln(c_hat) / ln(m)`.
    pub estimated_exponent: f64,
    pub mean_c_rel: Option<f64>,
    pub mean_predicted_exponent_thm: Option<f64>,
    pub mean_predicted_exponent_exp: Option<f64>,
    pub mean_delta_rho: Option<f64>,
    pub feasibility: Feasibility,
    pub cost_bound_violations: usize,
    pub band: Band,
    pub pairs: Vec<PairSample>,
}

impl GraphReport {
    pub fn row(&self) -> ReportRow {
        ReportRow {
            graph_id: self.graph_id.clone(),
            n: self.meta.n,
            m: self.meta.m,
            k: self.k,
            c_hat: self.c_hat,
            estimated_exponent: self.estimated_exponent,
            mean_c_rel: self.mean_c_rel,
            mean_predicted_exponent_thm: self.mean_predicted_exponent_thm,
            mean_predicted_exponent_exp: self.mean_predicted_exponent_exp,
            mean_delta_rho: self.mean_delta_rho,
            band: self.band,
        }
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Analyzes `config.k` sampled pairs of a connected graph. Means of the
/// parameter columns run over every feasible `(pair, α)` evaluation.
pub fn analyze_graph(graph: &Graph, meta: &GraphMeta, graph_id: &str, config: &Config) -> Result<GraphReport> {
    config.validate()?;
    if graph.m() < 2 {
        return Err(Error::InvalidParameter(format!("graph {graph_id} needs at least 2 edges, has {}", graph.m())));
    }
    let stubs = sample_pairs(graph, config.k, config.seed)?;
    let pairs: Vec<PairSample> = stubs
        .par_iter()
        .map_init(|| BidiSearch::new(graph), |search, &stub| analyze_pair(search, graph, stub, config))
        .collect::<Result<_>>()?;

    let m = graph.m() as f64;
    let total: u128 = pairs.iter().map(|p| p.measured_cost as u128).sum();
    let c_hat = total as f64 / pairs.len() as f64;
    let estimated_exponent = c_hat.ln() / m.ln();

    let feasible = || pairs.iter().flat_map(|p| p.feasible());
    let feasibility = Feasibility {
        evaluations: pairs.iter().map(|p| p.params_at.len()).sum(),
        feasible: feasible().count(),
        covered: feasible().filter(|p| p.covered).count(),
        infeasible_pairs: pairs.iter().filter(|p| p.feasible().next().is_none()).count(),
    };

    Ok(GraphReport {
        graph_id: graph_id.to_string(),
        meta: meta.clone(),
        k: pairs.len(),
        seed: config.seed,
        b: config.b,
        c_hat,
        estimated_exponent,
        mean_c_rel: mean(feasible().filter_map(|p| p.c_rel)),
        mean_predicted_exponent_thm: mean(feasible().filter_map(|p| p.predicted_exponent_thm)),
        mean_predicted_exponent_exp: mean(feasible().filter_map(|p| p.predicted_exponent_exp)),
        mean_delta_rho: mean(feasible().map(|p| p.delta_rho)),
        feasibility,
        cost_bound_violations: pairs.iter().filter(|p| !p.cost_bound_holds).count(),
        band: Band::of(estimated_exponent, config.bands),
        pairs,
    })
}

pub const PAIRS_HEADER: [&str; 8] = ["graph_id", "index", "s", "t", "d", "cost", "optimal_meeting_cost", "cost_bound_holds"];

fn pair_records(report: &GraphReport) -> Vec<Vec<String>> {
    report
        .pairs
        .iter()
        .map(|p| {
            vec![
                report.graph_id.clone(),
                p.index.to_string(),
                p.s.to_string(),
                p.t.to_string(),
                p.d.to_string(),
                p.measured_cost.to_string(),
                p.optimal_meeting_cost.to_string(),
                p.cost_bound_holds.to_string(),
            ]
        })
        .collect()
}

fn params_records(report: &GraphReport) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for p in &report.pairs {
        for e in &p.params_at {
            if let Some(params) = &e.params {
                let mut rec = vec![report.graph_id.clone(), p.index.to_string()];
                rec.extend(report::params_record(params));
                out.push(rec);
            }
        }
    }
    out
}

fn params_header() -> Vec<&'static str> {
    let mut h = vec!["graph_id", "index"];
    h.extend(report::PARAMS_HEADER);
    h
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BandCounts {
    pub sublinear: usize,
    pub middle: usize,
    pub linear: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub graphs: usize,
    /// Input files that could not be loaded or analyzed.
    pub skipped: Vec<String>,
    pub median_n: f64,
    pub mean_n: f64,
    pub median_m: f64,
    pub mean_m: f64,
    pub mean_average_degree: f64,
    pub mean_estimated_exponent: f64,
    pub bands: BandCounts,
    pub cost_bound_violations: usize,
    pub config: Config,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub rows: Vec<ReportRow>,
    pub summary: CorpusSummary,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Corpus-level statistics over report rows.
pub fn summarize(rows: &[ReportRow], skipped: Vec<String>, cost_bound_violations: usize, config: &Config) -> CorpusSummary {
    let mut bands = BandCounts::default();
    for r in rows {
        match Band::of(r.estimated_exponent, config.bands) {
            Band::Sublinear => bands.sublinear += 1,
            Band::Middle => bands.middle += 1,
            Band::Linear => bands.linear += 1,
        }
    }
    let ns: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ms: Vec<f64> = rows.iter().map(|r| r.m as f64).collect();
    CorpusSummary {
        graphs: rows.len(),
        skipped,
        median_n: median(ns.clone()),
        mean_n: mean(ns.into_iter()).unwrap_or(f64::NAN),
        median_m: median(ms.clone()),
        mean_m: mean(ms.into_iter()).unwrap_or(f64::NAN),
        mean_average_degree: mean(rows.iter().map(|r| 2.0 * r.m as f64 / r.n as f64)).unwrap_or(f64::NAN),
        mean_estimated_exponent: mean(rows.iter().map(|r| r.estimated_exponent)).unwrap_or(f64::NAN),
        bands,
        cost_bound_violations,
        config: config.clone(),
    }
}

const GRAPH_DIR: &str = "graphs";

fn is_candidate(path: &Path) -> bool {
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("");
    if name.starts_with('.') || !path.is_file() {
        return false;
    }
    !matches!(
        path.extension().and_then(|s| s.to_str()),
        Some("json" | "csv" | "md" | "txt" | "svg")
    )
}

/// Identifier of a corpus file: its name without the final extension.
pub fn graph_id(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph").to_string()
}

/// Edge-list files of a corpus directory in name order. Sidecars and
/// reports (`.json`, `.csv`, `.md`, `.txt`, `.svg`) are ignored.
pub fn corpus_files(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if is_candidate(&path) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn write_records(path: &Path, header: &[&str], records: &[Vec<String>]) -> Result<()> {
    let mut buf = Vec::new();
    {
        let mut w = report::csv_writer(&mut buf);
        w.write_record(header)?;
        for r in records {
            w.write_record(r)?;
        }
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

fn read_records(path: &Path) -> Result<Vec<Vec<String>>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::Reader::from_reader(file);
    r.records().map(|rec| Ok(rec?.iter().map(str::to_string).collect())).collect()
}

/// Runs every edge list in `dir` and writes into `out_dir`:
///
/// * `graphs.csv`: one [`ReportRow`] per graph,
/// * `pairs.csv`: one row per sampled pair,
/// * `params.csv`: one row per feasible `(pair, α)` evaluation,
/// * `summary.json`: [`CorpusSummary`],
/// * `graphs/<id>.*`: per-graph pieces used for resuming.
///
/// Unreadable graphs are logged and listed in the summary.
pub fn run_corpus(dir: impl AsRef<Path>, config: &Config, out_dir: impl AsRef<Path>) -> Result<CorpusReport> {
    config.validate()?;
    let out_dir = out_dir.as_ref();
    let piece_dir = out_dir.join(GRAPH_DIR);
    std::fs::create_dir_all(&piece_dir).map_err(|e| Error::io(&piece_dir, e))?;

    let mut skipped = Vec::new();
    let mut ids = BTreeMap::new();
    for path in corpus_files(&dir)? {
        let id = graph_id(&path);
        if let Some(prev) = ids.insert(id.clone(), path.clone()) {
            return Err(Error::InvalidParameter(format!(
                "graph id '{id}' is shared by {} and {}",
                prev.display(),
                path.display()
            )));
        }
        let row_path = piece_dir.join(format!("{id}.row.csv"));
        if config.resume && row_path.exists() {
            log::info!("resume: skipping {id}");
            continue;
        }
        let analyzed = load_graph(&path, &ParseOptions::default())
            .and_then(|(g, meta)| analyze_graph(&g, &meta, &id, config));
        let report = match analyzed {
            Ok(r) => r,
            Err(e) => {
                log::warn!("skipping {}: {e}", path.display());
                skipped.push(format!("{}: {e}", path.file_name().and_then(|s| s.to_str()).unwrap_or("?")));
                continue;
            }
        };
        if report.cost_bound_violations > 0 {
            log::error!("{id}: {} pairs violate cost <= d * optimal meeting cost", report.cost_bound_violations);
        }
        write_records(&piece_dir.join(format!("{id}.pairs.csv")), &PAIRS_HEADER, &pair_records(&report))?;
        write_records(&piece_dir.join(format!("{id}.params.csv")), &params_header(), &params_records(&report))?;
        // Written last: its presence marks the graph as done.
        report::emit_csv(&[report.row()], &row_path)?;
    }

    // Assemble from the pieces on disk so fresh and resumed runs agree byte
    // for byte.
    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    let mut params = Vec::new();
    for id in ids.keys() {
        let row_path = piece_dir.join(format!("{id}.row.csv"));
        if !row_path.exists() {
            continue;
        }
        rows.extend(report::read_csv(&row_path)?);
        pairs.extend(read_records(&piece_dir.join(format!("{id}.pairs.csv")))?);
        params.extend(read_records(&piece_dir.join(format!("{id}.params.csv")))?);
    }
    if rows.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no graph in {} could be analyzed",
            dir.as_ref().display()
        )));
    }
    let cost_bound_violations = pairs.iter().filter(|r| r.last().map(String::as_str) == Some("false")).count();

    report::emit_csv(&rows, out_dir.join("graphs.csv"))?;
    write_records(&out_dir.join("pairs.csv"), &PAIRS_HEADER, &pairs)?;
    write_records(&out_dir.join("params.csv"), &params_header(), &params)?;
    let summary = summarize(&rows, skipped, cost_bound_violations, config);
    let summary_path = out_dir.join("summary.json");
    let json = serde_json::to_string_pretty(&summary)? + "\n";
    std::fs::write(&summary_path, json).map_err(|e| Error::io(&summary_path, e))?;
    rows.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
    Ok(CorpusReport { rows, summary })
}

/// One cell of a sensitivity sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub graph_id: String,
    pub alpha: f64,
    pub b: Base,
    /// Pairs sampled.
    pub pairs: usize,
    /// Pairs whose cheap landmarks exist at this α.
    pub feasible: usize,
    pub mean_overlap: Option<f64>,
    pub mean_c_rel: Option<f64>,
    /// Undefined for `b = 1`.
    pub mean_delta_rho: Option<f64>,
}

pub const SWEEP_HEADER: [&str; 8] = ["graph_id", "alpha", "b", "pairs", "feasible", "mean_overlap", "mean_c_rel", "mean_delta_rho"];

impl SweepRow {
    pub fn record(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(report::fmt_g).unwrap_or_default();
        vec![
            self.graph_id.clone(),
            report::fmt_g(self.alpha),
            self.b.to_string(),
            self.pairs.to_string(),
            self.feasible.to_string(),
            opt(self.mean_overlap),
            opt(self.mean_c_rel),
            opt(self.mean_delta_rho),
        ]
    }
}

/// Recomputes the parameter means over the same sampled pairs for every
/// `(α, b)` cell. `b = 1` is allowed; it yields overlaps but no `δ_ρ`.
pub fn sensitivity_sweep(
    graph: &Graph,
    graph_id: &str,
    k: usize,
    seed: u64,
    alphas: &[f64],
    bases: &[Base],
) -> Result<Vec<SweepRow>> {
    if alphas.is_empty() || bases.is_empty() {
        return Err(Error::InvalidParameter("sweep needs at least one alpha and one b".into()));
    }
    if let Some(a) = alphas.iter().find(|a| !(**a >= 0.0 && **a < 1.0)) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1), got {a}")));
    }
    if let Some(b) = bases.iter().find(|b| **b < Base::integer(1)) {
        return Err(Error::InvalidParameter(format!("b must be at least 1, got {b}")));
    }
    let stubs = sample_pairs(graph, k, seed)?;
    let profiles: Vec<LayerCostProfile> =
        stubs.par_iter().map(|p| layer_cost_profile(graph, p.s, p.t)).collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(alphas.len() * bases.len());
    for &alpha in alphas {
        for &b in bases {
            let mut overlaps = Vec::new();
            let mut c_rels = Vec::new();
            let mut deltas = Vec::new();
            for profile in &profiles {
                let lm = match landmarks::<f64>(profile, alpha, b) {
                    Ok(lm) => lm,
                    Err(Error::AlphaTooSmall { .. }) => continue,
                    Err(e) => return Err(e),
                };
                overlaps.push(lm.overlap as f64);
                c_rels.extend(lm.c_rel::<f64>());
                if b.is_above_one() {
                    deltas.push(compute_params::<f64>(profile, alpha, b)?.delta_rho);
                }
            }
            rows.push(SweepRow {
                graph_id: graph_id.to_string(),
                alpha,
                b,
                pairs: profiles.len(),
                feasible: overlaps.len(),
                mean_overlap: mean(overlaps.into_iter()),
                mean_c_rel: mean(c_rels.into_iter()),
                mean_delta_rho: mean(deltas.into_iter()),
            });
        }
    }
    Ok(rows)
}

pub fn write_sweep<W: std::io::Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = report::csv_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush().map_err(|e| Error::io("<sweep output>", e))?;
    Ok(())
}
