//! `bidi`: command-line front end for loading graphs, running bidirectional
//! searches, analyzing expansion parameters and running corpus experiments.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 on internal
//! failures.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bidi_core::adversarial::{generate, AdversarialSpec, DEFAULT_VERTEX_BUDGET};
use bidi_core::expansion::{compute_params, dichotomy_classify, optimize_alpha, Objective};
use bidi_core::experiment::{
    analyze_graph, run_corpus, sensitivity_sweep, write_sweep, AlphaPolicy, Config, DEFAULT_SWEEP_ALPHAS,
};
use bidi_core::graph::{load_graph, Graph, GraphMeta, ParseOptions};
use bidi_core::report::{self, Axes};
use bidi_core::search::{bidirectional_bfs, layer_cost_profile, StrategyKind};
use bidi_core::{Base, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bidi", version, about = "Balanced bidirectional BFS: measurement and expansion analysis")]
struct Cli {
    /// Worker threads for per-pair work (default: all cores).
    #[arg(long, global = true, env = "BIDI_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load and preprocess an edge list; print its metadata.
    LoadInfo(GraphArg),
    /// Run one bidirectional search.
    Query(QueryArgs),
    /// Print the layer cost profile of a pair.
    Profile(PairArgs),
    /// Expansion parameters of a pair.
    AnalyzePair(AnalyzePairArgs),
    /// Sample pairs of one graph and aggregate their parameters.
    AnalyzeGraph(AnalyzeGraphArgs),
    /// Analyze every edge list in a directory.
    RunCorpus(RunCorpusArgs),
    /// Build a pair of trees with prescribed expansion.
    GenerateAdversarial(AdversarialArgs),
    /// Parameter means over a grid of (alpha, b).
    Sweep(SweepArgs),
    /// Scatter plot of a corpus report.
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,
    /// Treat a leading "n m k" line as an edge.
    #[arg(long)]
    no_header_detection: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Start vertex (label from the file, or index).
    #[arg(long)]
    s: String,
    /// Destination vertex.
    #[arg(long)]
    t: String,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// balanced, unidirectional or meet-at:K
    #[arg(long, default_value = "balanced")]
    strategy: String,
}

#[derive(Args, Debug)]
struct AnalyzePairArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Cheap budget exponent; when omitted, alpha is optimized.
    #[arg(long)]
    alpha: Option<f64>,
    /// Expansion base, e.g. 2, 1.5 or 3/2.
    #[arg(long, default_value = "2")]
    b: String,
    /// Objective when optimizing alpha: min_exponent or min_rho_gap.
    #[arg(long, default_value = "min_rho_gap")]
    objective: String,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// JSON config file; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    b: Option<String>,
    /// Evaluate every pair at this alpha instead of the configured policy.
    #[arg(long)]
    alpha: Option<f64>,
}

impl ExperimentArgs {
    fn config(&self) -> Result<Config> {
        let mut config = match &self.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        if let Some(k) = self.k {
            config.k = k;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(b) = &self.b {
            config.b = b.parse()?;
        }
        if let Some(alpha) = self.alpha {
            config.alpha_policy = AlphaPolicy::Fixed(vec![alpha]);
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args, Debug)]
struct AnalyzeGraphArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// Include every sampled pair in the output.
    #[arg(long)]
    pairs: bool,
}

#[derive(Args, Debug)]
struct RunCorpusArgs {
    /// Directory of edge-list files.
    #[arg(long, alias = "graph")]
    corpus: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// Skip graphs already present in the output directory.
    #[arg(long)]
    resume: bool,
}

#[derive(Args, Debug)]
struct AdversarialArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    bplus: f64,
    /// Target ratio; defaults to the threshold for (alpha, b, bplus).
    #[arg(long)]
    rho: Option<f64>,
    /// Depth of each tree.
    #[arg(long)]
    d: usize,
    /// Length of a path hung off the deepest layer of the start tree.
    #[arg(long)]
    append_path: Option<usize>,
    /// Maximum number of vertices.
    #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
    budget: u64,
    /// Edge-list output; a JSON sidecar is written next to it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, default_value_t = bidi_core::experiment::DEFAULT_K)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated alpha grid.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Comma-separated expansion bases.
    #[arg(long, value_delimiter = ',', default_value = "1,1.5,2,3,4")]
    bs: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PlotKind {
    /// Predicted exponent against estimated exponent.
    Exponent,
    /// delta_rho against estimated exponent.
    DeltaRho,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// `graphs.csv` written by run-corpus.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "exponent")]
    kind: PlotKind,
    /// Use the theorem form of the predicted exponent instead of the
    /// experimental form.
    #[arg(long)]
    theorem_form: bool,
    #[arg(long)]
    out: PathBuf,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn emit_json(out: Option<&Path>, value: &impl serde::Serialize) -> Result<()> {
    emit(out, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn load(arg: &GraphArg) -> Result<(Graph, GraphMeta)> {
    let options = ParseOptions { detect_header: !arg.no_header_detection };
    load_graph(&arg.graph, &options)
}

fn load_pair(args: &PairArgs) -> Result<(Graph, usize, usize)> {
    let (g, _) = load(&args.graph)?;
    let s = g.resolve(&args.s)?;
    let t = g.resolve(&args.t)?;
    Ok((g, s, t))
}

fn graph_id(path: &Path) -> String {
    bidi_core::experiment::graph_id(path)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::LoadInfo(arg) => {
            let (g, meta) = load(&arg)?;
            let max_degree = (0..g.n()).map(|v| g.deg(v)).max().unwrap_or(0);
            let info = serde_json::json!({
                "meta": meta,
                "average_degree": 2.0 * g.m() as f64 / g.n() as f64,
                "max_degree": max_degree,
            });
            emit_json(arg.out.as_deref(), &info)
        }
        Command::Query(args) => {
            let (g, s, t) = load_pair(&args.pair)?;
            let mut strategy: StrategyKind = args.strategy.parse()?;
            let result = bidirectional_bfs(&g, s, t, &mut strategy)?;
            emit_json(args.pair.graph.out.as_deref(), &result)
        }
        Command::Profile(args) => {
            let (g, s, t) = load_pair(&args)?;
            let profile = layer_cost_profile(&g, s, t)?;
            emit_json(args.graph.out.as_deref(), &profile)
        }
        Command::AnalyzePair(args) => {
            let (g, s, t) = load_pair(&args.pair)?;
            let b: Base = args.b.parse()?;
            let profile = layer_cost_profile(&g, s, t)?;
            let params = match args.alpha {
                Some(alpha) => compute_params::<f64>(&profile, alpha, b)?,
                None => {
                    let objective: Objective = args.objective.parse()?;
                    optimize_alpha::<f64>(&profile, b, objective, None)?.1
                }
            };
            let mut value = serde_json::to_value(params)?;
            value["classification"] = serde_json::to_value(dichotomy_classify(&params))?;
            emit_json(args.pair.graph.out.as_deref(), &value)
        }
        Command::AnalyzeGraph(args) => {
            let config = args.experiment.config()?;
            let (g, meta) = load(&args.graph)?;
            let mut report = analyze_graph(&g, &meta, &graph_id(&args.graph.graph), &config)?;
            if !args.pairs {
                report.pairs.clear();
            }
            emit_json(args.graph.out.as_deref(), &report)
        }
        Command::RunCorpus(args) => {
            let mut config = args.experiment.config()?;
            config.resume |= args.resume;
            let report = run_corpus(&args.corpus, &config, &args.out)?;
            emit_json(None, &report.summary)
        }
        Command::GenerateAdversarial(args) => {
            let mut spec = match args.rho {
                Some(rho) => AdversarialSpec::new(args.alpha, args.b, args.bplus, rho, args.d),
                None => AdversarialSpec::at_threshold(args.alpha, args.b, args.bplus, args.d),
            };
            spec.append_path = args.append_path;
            spec.vertex_budget = args.budget;
            let instance = generate(&spec)?;
            instance.save(&args.out)?;
            emit_json(None, &instance.sidecar())
        }
        Command::Sweep(args) => {
            let (g, _) = load(&args.graph)?;
            let alphas = args.alphas.clone().unwrap_or_else(|| DEFAULT_SWEEP_ALPHAS.to_vec());
            let bases = args.bs.iter().map(|b| b.parse()).collect::<Result<Vec<Base>>>()?;
            let rows = sensitivity_sweep(&g, &graph_id(&args.graph.graph), args.k, args.seed, &alphas, &bases)?;
            let mut buf = Vec::new();
            write_sweep(&rows, &mut buf)?;
            emit(args.graph.out.as_deref(), &String::from_utf8(buf).map_err(|e| Error::Internal(e.to_string()))?)
        }
        Command::Plot(args) => {
            let rows = report::read_csv(&args.input)?;
            let bands = bidi_core::experiment::DEFAULT_BANDS;
            let (points, axes): (Vec<(f64, f64)>, Axes) = match args.kind {
                PlotKind::Exponent => {
                    let y = |r: &report::ReportRow| {
                        if args.theorem_form {
                            r.mean_predicted_exponent_thm
                        } else {
                            r.mean_predicted_exponent_exp
                        }
                    };
                    (rows.iter().filter_map(|r| Some((r.estimated_exponent, y(r)?))).collect(), Axes::exponent_plot(bands))
                }
                PlotKind::DeltaRho => (
                    rows.iter().filter_map(|r| Some((r.estimated_exponent, r.mean_delta_rho?))).collect(),
                    Axes::delta_rho_plot(bands),
                ),
            };
            report::emit_scatter_svg(&points, &axes, &args.out)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
        Err(_) => ExitCode::from(2),
    }
}
