use std::path::Path;
use std::process::{Command, Output};

fn bidi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bidi")).args(args).output().expect("run bidi")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write_graph(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const SQUARE_WITH_TAIL: &str = "# test graph\n1 2\n2 3\n3 4\n4 1\n3 5\n";

#[test]
fn load_info_reports_meta() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "g.el", SQUARE_WITH_TAIL);
    let out = bidi(&["load-info", "--graph", &g]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["meta"]["n"], 5);
    assert_eq!(v["meta"]["m"], 5);
    assert_eq!(v["max_degree"], 3);
}

#[test]
fn query_returns_distance_and_cost() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "g.el", SQUARE_WITH_TAIL);
    let out = bidi(&["query", "--graph", &g, "--s", "1", "--t", "5", "--strategy", "balanced"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d"], 3);
    assert_eq!(v["cost"], 6);
    let uni = json(&bidi(&["query", "--graph", &g, "--s", "1", "--t", "5", "--strategy", "unidirectional"]));
    assert_eq!(uni["d"], 3);
}

#[test]
fn analyze_pair_prints_params() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "g.el", SQUARE_WITH_TAIL);
    let out = bidi(&["analyze-pair", "--graph", &g, "--s", "1", "--t", "5", "--alpha", "0.5", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["alpha"], 0.5);
    for field in ["cheap_s", "cheap_t", "expan_s", "expan_t", "S1", "S2", "T1", "T2", "rho", "rho_max", "delta_rho"] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    let optimized = bidi(&["analyze-pair", "--graph", &g, "--s", "1", "--t", "5"]);
    assert_eq!(optimized.status.code(), Some(0));
}

#[test]
fn profile_lists_costs() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "g.el", "0 1\n1 2\n2 3\n3 4\n");
    let v = json(&bidi(&["profile", "--graph", &g, "--s", "0", "--t", "4"]));
    assert_eq!(v["cs"], serde_json::json!([1, 2, 2, 2]));
    assert_eq!(v["ct"], serde_json::json!([2, 2, 2, 1]));
}

#[test]
fn exit_codes() {
    assert_eq!(bidi(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(bidi(&["query", "--bogus-flag"]).status.code(), Some(1));
    assert_eq!(bidi(&["query", "--graph", "/does/not/exist", "--s", "1", "--t", "2"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "g.el", SQUARE_WITH_TAIL);
    assert_eq!(bidi(&["query", "--graph", &g, "--s", "1", "--t", "99"]).status.code(), Some(1));
    assert_eq!(bidi(&["query", "--graph", &g, "--s", "1", "--t", "1"]).status.code(), Some(0));
    assert_eq!(bidi(&["profile", "--graph", &g, "--s", "1", "--t", "1"]).status.code(), Some(1));
    assert_eq!(bidi(&["query", "--graph", &g, "--s", "1", "--t", "2", "--strategy", "sideways"]).status.code(), Some(1));
    assert_eq!(bidi(&["--help"]).status.code(), Some(0));
}

#[test]
fn generate_adversarial_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("adv.el");
    let o = bidi(&[
        "generate-adversarial", "--alpha", "0.3", "--b", "2", "--bplus", "4", "--rho", "0.6", "--d", "6", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.exists());
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("adv.el.json")).unwrap()).unwrap();
    assert_eq!(sidecar["d1"], 2);
    assert_eq!(sidecar["d2"], 4);
    let bad = bidi(&["generate-adversarial", "--alpha", "0.3", "--b", "4", "--bplus", "2", "--d", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn corpus_plot_and_threads() {
    let corpus = tempfile::tempdir().unwrap();
    write_graph(corpus.path(), "a.el", SQUARE_WITH_TAIL);
    write_graph(corpus.path(), "b.el", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3\n");
    let config = corpus.path().join("config.json");
    std::fs::write(&config, r#"{"k": 20, "seed": 3, "b": 2, "alpha_policy": "breakpoints"}"#).unwrap();
    let out1 = tempfile::tempdir().unwrap();
    let out2 = tempfile::tempdir().unwrap();
    let run = |out: &Path, threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_bidi"))
            .env("BIDI_THREADS", threads)
            .args(["run-corpus", "--corpus", corpus.path().to_str().unwrap(), "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    };
    run(out1.path(), "1");
    run(out2.path(), "3");
    let a = std::fs::read(out1.path().join("graphs.csv")).unwrap();
    let b = std::fs::read(out2.path().join("graphs.csv")).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 3);

    let svg = out1.path().join("plot.svg");
    let graphs = out1.path().join("graphs.csv");
    let o = bidi(&["plot", "--input", graphs.to_str().unwrap(), "--kind", "delta-rho", "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<circle"));
}

#[test]
fn sweep_and_analyze_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "g.el", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3\n1 4\n");
    let o = bidi(&["sweep", "--graph", &g, "--k", "10", "--alphas", "0.1,0.5", "--bs", "1,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("graph_id,alpha,b,pairs,feasible,mean_overlap,mean_c_rel,mean_delta_rho\n"));

    let o = bidi(&["analyze-graph", "--graph", &g, "--k", "15", "--seed", "2", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["k"], 15);
    assert_eq!(v["cost_bound_violations"], 0);
}
