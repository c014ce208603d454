//! Acceptance suite. Runs every check, prints one PASS/FAIL line per
//! criterion and exits non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::time::Instant;

use bidi_core::adversarial::{generate, AdversarialInstance, AdversarialSpec};
use bidi_core::expansion::{
    alpha_breakpoints, compute_cheap, compute_expan, compute_params, dichotomy_classify, highest_expansion,
    optimize_alpha, overlap_cost_bound, Classification, Objective,
};
use bidi_core::experiment::{analyze_graph, corpus_files, graph_id, run_corpus, AlphaPolicy, Config};
use bidi_core::graph::{load_graph, Graph, ParseOptions};
use bidi_core::search::{layer_cost_profile, optimal_meeting_cost, Balanced, BidiSearch, LayerCostProfile};
use bidi_core::Base;

use bidi_validation::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// Tallies of the expansion invariants over analyzed pairs.
#[derive(Default)]
struct Invariants {
    checked: usize,
    distance_bound_violations: Vec<String>,
    last_step_violations: usize,
    cheap_prefix_violations: usize,
}

impl Invariants {
    fn check(&mut self, profile: &LayerCostProfile, b: Base, alphas: &[f64], tag: &str) {
        let (expan_s, _) = compute_expan(profile, b).unwrap();
        let bf = b.to_f64();
        self.checked += 1;
        if !expanding_distance_bound(profile.d, expan_s, profile.m, bf) && self.distance_bound_violations.len() < 3 {
            self.distance_bound_violations.push(format!(
                "{tag}: d={} expan_s={} m={} b={b} (log_b(2m)={:.3})",
                profile.d,
                expan_s,
                profile.m,
                (2.0 * profile.m as f64).ln() / bf.ln()
            ));
        } else if !expanding_distance_bound(profile.d, expan_s, profile.m, bf) {
            self.distance_bound_violations.push(String::new());
        }
        for j in 1..=expan_s {
            if !last_step_share_bound(&profile.cs, j, frac(b)) {
                self.last_step_violations += 1;
            }
        }
        for &alpha in alphas {
            if let (Some(cheap_s), _) = compute_cheap(profile, alpha).unwrap() {
                if cheap_s <= expan_s && !cheap_prefix_length_bound(cheap_s, profile.m, alpha, bf) {
                    self.cheap_prefix_violations += 1;
                }
            }
        }
    }
}

struct RandomSuiteResults {
    pairs: usize,
    distance_mismatches: usize,
    cost_bound_violations: usize,
}

/// Criteria 1 and 2 share one pass over the 100-graph suite; the invariant
/// tallies for criterion 4 are collected along the way.
fn random_suite_checks(inv: &mut Invariants) -> RandomSuiteResults {
    let suite = random_suite(100, 200, 1);
    let mut res = RandomSuiteResults { pairs: 0, distance_mismatches: 0, cost_bound_violations: 0 };
    let b = Base::integer(2);
    for (gi, g) in suite.iter().enumerate() {
        let dist: Vec<Vec<usize>> = (0..g.n()).map(|v| bfs(g, v)).collect();
        let mut search = BidiSearch::new(g);
        for s in 0..g.n() {
            for t in 0..g.n() {
                res.pairs += 1;
                let r = search.run(s, t, &mut Balanced).unwrap();
                if r.d != dist[s][t] {
                    res.distance_mismatches += 1;
                }
                if s == t {
                    continue;
                }
                let profile = layer_cost_profile(g, s, t).unwrap();
                let (opt, _) = optimal_meeting_cost(&profile);
                if r.cost as u128 > r.d as u128 * opt as u128 {
                    res.cost_bound_violations += 1;
                }
                let alphas = alpha_breakpoints::<f64>(&profile);
                inv.check(&profile, b, &alphas, &format!("suite1 graph {gi} ({s},{t})"));
            }
        }
    }
    res
}

struct OracleResults {
    evaluations: usize,
    mismatches: Vec<String>,
}

fn landmark_oracle(inv: &mut Invariants) -> OracleResults {
    let suite = random_suite(50, 100, 3);
    let bases = [Base::new(3, 2).unwrap(), Base::integer(2), Base::integer(4)];
    let mut res = OracleResults { evaluations: 0, mismatches: Vec::new() };
    let mut mismatch = |msg: String| {
        if res.mismatches.len() < 5 {
            res.mismatches.push(msg);
        } else {
            res.mismatches.push(String::new());
        }
    };
    for (gi, g) in suite.iter().enumerate() {
        let dist: Vec<Vec<usize>> = (0..g.n()).map(|v| bfs(g, v)).collect();
        for s in 0..g.n() {
            for t in 0..g.n() {
                if s == t {
                    continue;
                }
                let tag = format!("graph {gi} ({s},{t})");
                let profile = layer_cost_profile(g, s, t).unwrap();
                let op = oracle_profile(g, &dist[s], &dist[t], t);
                if profile.d != op.d || profile.cs != op.cs || profile.ct != op.ct {
                    mismatch(format!("{tag}: cost profile differs"));
                    continue;
                }
                let ln_m = (op.m as f64).ln();
                let mut oracle_alphas: Vec<u64> = Vec::new();
                for j in 1..=op.d {
                    oracle_alphas.push(op.cs[..j].iter().sum());
                    oracle_alphas.push(op.ct[j - 1..].iter().sum());
                }
                oracle_alphas.retain(|&c| c < op.m);
                oracle_alphas.sort_unstable();
                oracle_alphas.dedup();
                let oracle_alphas: Vec<f64> = oracle_alphas.iter().map(|&c| (c as f64).ln() / ln_m).collect();
                let alphas = alpha_breakpoints::<f64>(&profile);
                if alphas != oracle_alphas {
                    mismatch(format!("{tag}: breakpoints differ"));
                }
                for &b in &bases {
                    for &alpha in &alphas {
                        res.evaluations += 1;
                        let o = oracle_landmarks(&op, alpha, frac(b));
                        let cheap = compute_cheap(&profile, alpha).unwrap();
                        let expan = compute_expan(&profile, b).unwrap();
                        let bp = highest_expansion(&profile, b);
                        let rho = compute_params::<f64>(&profile, alpha, b).ok().map(|p| p.rho);
                        let bp_equal = bp.numer() as u128 * o.b_plus.1 as u128 == o.b_plus.0 as u128 * bp.denom() as u128;
                        if cheap != (o.cheap_s, o.cheap_t) || expan != (o.expan_s, o.expan_t) || !bp_equal || rho != o.rho {
                            mismatch(format!(
                                "{tag} alpha={alpha} b={b}: analyzer {cheap:?} {expan:?} {bp} {rho:?}, oracle {:?} {:?} {:?} {:?}",
                                (o.cheap_s, o.cheap_t),
                                (o.expan_s, o.expan_t),
                                o.b_plus,
                                o.rho
                            ));
                        }
                    }
                    inv.check(&profile, b, &alphas, &format!("suite3 {tag}"));
                }
            }
        }
    }
    res
}

fn criterion5() -> Outcome {
    let b = Base::integer(2);
    let mut lines = Vec::new();
    let mut pass = true;
    for d in [8, 10, 12] {
        let (g, s, t) = bidi_core::generators::bridged_tree_pair(3, d, d);
        let mut search = BidiSearch::new(&g);
        let cost = search.run(s, t, &mut Balanced).unwrap().cost;
        let profile = layer_cost_profile(&g, s, t).unwrap();
        let (es, et) = compute_expan(&profile, b).unwrap();
        let overlap = es as i64 - et as i64 + 1;
        let m = g.m() as f64;
        let c = overlap as f64 / m.log2();
        let bound: f64 = overlap_cost_bound(2.0, c, m);
        pass &= overlap > 0 && (cost as f64) <= bound;
        lines.push(format!("d={d}: overlap={overlap} c={c:.3} cost={cost} bound={bound:.3e}"));
    }
    outcome(pass, lines.join("; "))
}

fn adversarial_family() -> Vec<AdversarialInstance> {
    [6, 8, 10, 12].iter().map(|&d| generate(&AdversarialSpec::at_threshold(0.3, 2.0, 4.0, d)).unwrap()).collect()
}

fn pair_cost(inst: &AdversarialInstance) -> u64 {
    BidiSearch::new(&inst.graph).run(inst.s, inst.t, &mut Balanced).unwrap().cost
}

fn criterion6(family: &[AdversarialInstance]) -> Outcome {
    let ratios: Vec<f64> = family.iter().map(|i| pair_cost(i) as f64 / i.graph.m() as f64).collect();
    let largest = family.last().unwrap();
    let target = largest.spec.rho;
    let profile = layer_cost_profile(&largest.graph, largest.s, largest.t).unwrap();
    let rho = compute_params::<f64>(&profile, 0.3, Base::integer(2)).unwrap().rho;
    let ratio_ok = ratios.last().unwrap() >= &(0.5 * ratios[0]);
    let rel = (rho - target).abs() / target;
    let rho_ok = rel <= 0.1;
    let ratio_text: Vec<String> =
        family.iter().zip(&ratios).map(|(i, r)| format!("d={}:{r:.3}", i.spec.depth)).collect();
    outcome(
        ratio_ok && rho_ok,
        format!(
            "cost/m [{}] {}; rho={rho:.3} target={target:.3} rel.err={:.1}% {}",
            ratio_text.join(" "),
            if ratio_ok { "ok" } else { "FAIL" },
            100.0 * rel,
            if rho_ok { "ok" } else { "FAIL" }
        ),
    )
}

fn criterion7(family: &[AdversarialInstance]) -> Outcome {
    let (g, s, t) = bidi_core::generators::bridged_tree_pair(2, 16, 16);
    let cost = BidiSearch::new(&g).run(s, t, &mut Balanced).unwrap().cost;
    let x_tree = (cost as f64).ln() / (g.m() as f64).ln();
    let profile = layer_cost_profile(&g, s, t).unwrap();
    let (alpha, p) = optimize_alpha::<f64>(&profile, Base::new(3, 2).unwrap(), Objective::MinRhoGap, None).unwrap();
    let tree_class = dichotomy_classify(&p);
    let tree_ok = tree_class == Classification::SublinearGuaranteed && x_tree <= 0.8;

    let adv = family.last().unwrap();
    let x_adv = (pair_cost(adv) as f64).ln() / (adv.graph.m() as f64).ln();
    let adv_profile = layer_cost_profile(&adv.graph, adv.s, adv.t).unwrap();
    let adv_params = compute_params::<f64>(&adv_profile, 0.3, Base::integer(2)).unwrap();
    let adv_class = dichotomy_classify(&adv_params);
    let adv_ok = adv_class == Classification::NoGuarantee && x_adv >= 0.9;
    outcome(
        tree_ok && adv_ok,
        format!(
            "tree pair: {tree_class} rho={:.3} alpha={alpha:.3} exponent={x_tree:.3}; adversarial d={}: {adv_class} rho={:.3} exponent={x_adv:.3}",
            p.rho, adv.spec.depth, adv_params.rho
        ),
    )
}

fn criterion8() -> Outcome {
    let corpus = data_dir().join("corpus10");
    let config = Config { k: 250, seed: 2024, ..Config::default() };
    let out1 = tempfile::tempdir().unwrap();
    let out2 = tempfile::tempdir().unwrap();
    let r1 = run_corpus(&corpus, &config, out1.path()).unwrap();
    run_corpus(&corpus, &config, out2.path()).unwrap();
    let mut identical = true;
    for f in ["graphs.csv", "pairs.csv", "params.csv", "summary.json"] {
        identical &= std::fs::read(out1.path().join(f)).unwrap() == std::fs::read(out2.path().join(f)).unwrap();
    }
    let all_k = r1.rows.iter().all(|r| r.k == 250);
    outcome(
        identical && r1.rows.len() == 10 && all_k,
        format!("{} graphs, k=250 each: {all_k}, byte-identical outputs: {identical}", r1.rows.len()),
    )
}

fn criterion9() -> Outcome {
    let config = Config { k: 250, seed: 7, b: Base::integer(2), alpha_policy: AlphaPolicy::Optimize(Objective::MinRhoGap), ..Config::default() };
    let mut pass = true;
    let mut lines = Vec::new();
    for (group, want_positive) in [("grid_like", false), ("expander_like", true)] {
        let files = corpus_files(data_dir().join("separation").join(group)).unwrap();
        pass &= files.len() == 3;
        for path in files {
            let (g, meta): (Graph, _) = load_graph(&path, &ParseOptions::default()).unwrap();
            let r = analyze_graph(&g, &meta, &graph_id(&path), &config).unwrap();
            let dr = r.mean_delta_rho.unwrap_or(f64::NAN);
            pass &= if want_positive { dr > 0.0 } else { dr <= 0.0 };
            lines.push(format!("{}={dr:.3}", r.graph_id));
        }
    }
    outcome(pass, format!("mean delta_rho: {}", lines.join(" ")))
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome, f64)> = Vec::new();
    let mut inv = Invariants::default();

    let start = Instant::now();
    let suite = random_suite_checks(&mut inv);
    let suite_secs = start.elapsed().as_secs_f64();
    results.push((
        1,
        "distance correctness",
        outcome(suite.distance_mismatches == 0, format!("{} pairs, {} mismatches", suite.pairs, suite.distance_mismatches)),
        suite_secs,
    ));
    results.push((
        2,
        "balanced cost <= d * optimal meeting cost",
        outcome(suite.cost_bound_violations == 0, format!("{} violations", suite.cost_bound_violations)),
        suite_secs,
    ));

    let start = Instant::now();
    let oracle = landmark_oracle(&mut inv);
    let shown: Vec<&String> = oracle.mismatches.iter().filter(|m| !m.is_empty()).collect();
    results.push((
        3,
        "landmark oracle equivalence",
        outcome(
            oracle.mismatches.is_empty(),
            format!("{} evaluations, {} mismatches {:?}", oracle.evaluations, oracle.mismatches.len(), shown),
        ),
        start.elapsed().as_secs_f64(),
    ));

    let examples: Vec<&String> = inv.distance_bound_violations.iter().filter(|m| !m.is_empty()).collect();
    results.push((
        4,
        "expansion invariants",
        outcome(
            inv.distance_bound_violations.is_empty() && inv.last_step_violations == 0 && inv.cheap_prefix_violations == 0,
            format!(
                "{} analyses; distance bound violations {} {:?}; last-step share violations {}; cheap prefix violations {}",
                inv.checked,
                inv.distance_bound_violations.len(),
                examples,
                inv.last_step_violations,
                inv.cheap_prefix_violations
            ),
        ),
        0.0,
    ));

    let start = Instant::now();
    results.push((5, "overlap cost bound", criterion5(), start.elapsed().as_secs_f64()));

    let start = Instant::now();
    let family = adversarial_family();
    results.push((6, "adversarial family: linear cost and realized rho", criterion6(&family), start.elapsed().as_secs_f64()));
    let start = Instant::now();
    results.push((7, "dichotomy on synthetic extremes", criterion7(&family), start.elapsed().as_secs_f64()));

    let start = Instant::now();
    results.push((8, "corpus reproducibility", criterion8(), start.elapsed().as_secs_f64()));
    let start = Instant::now();
    results.push((9, "grid-like vs expander-like separation", criterion9(), start.elapsed().as_secs_f64()));

    let mut failed = 0;
    for (id, name, o, secs) in &results {
        println!("[{id}] {} {name}: {} ({secs:.1}s)", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
