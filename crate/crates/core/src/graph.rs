//! Edge-list loading, preprocessing and the compressed adjacency graph.
//!
//! Loading is a staged pipeline: [`load_edge_list`] parses raw (possibly
//! directed, looped, duplicated) edges, [`simplify`] turns them into a simple
//! undirected [`Graph`], and [`largest_connected_component`] restricts it to
//! its largest component. Every mutation is recorded in [`GraphMeta`].

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Skip a leading line of three integers (Matrix Market size line).
    pub detect_header: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { detect_header: true }
    }
}

/// Parsed but unprocessed edges. Vertex ids index into `labels`, assigned in
/// order of first appearance.
#[derive(Debug, Clone, Default)]
pub struct RawEdges {
    pub source: String,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<String>,
    pub skipped_header: Option<usize>,
}

impl RawEdges {
    pub fn n(&self) -> usize {
        self.labels.len()
    }
}

pub fn load_edge_list(path: impl AsRef<Path>, options: &ParseOptions) -> Result<RawEdges> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(BufReader::new(file), &path.display().to_string(), options)
}

pub fn parse_edge_list(reader: impl BufRead, source: &str, options: &ParseOptions) -> Result<RawEdges> {
    let mut raw = RawEdges { source: source.to_string(), ..Default::default() };
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen_content = false;

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(source, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if !seen_content {
            seen_content = true;
            if options.detect_header && tokens.len() == 3 && tokens.iter().all(|t| t.parse::<u64>().is_ok()) {
                log::warn!("{source}:{lineno}: treating '{trimmed}' as a dimension header and skipping it");
                raw.skipped_header = Some(lineno);
                continue;
            }
        }
        if tokens.len() < 2 {
            return Err(Error::Parse {
                path: source.into(),
                line: lineno,
                reason: format!("expected two vertex labels, found '{trimmed}'"),
            });
        }
        let mut id = |label: &str| -> usize {
            if let Some(&i) = index.get(label) {
                return i;
            }
            let i = raw.labels.len();
            raw.labels.push(label.to_string());
            index.insert(label.to_string(), i);
            i
        };
        let u = id(tokens[0]);
        let v = id(tokens[1]);
        raw.edges.push((u, v));
    }

    if raw.edges.is_empty() {
        return Err(Error::EmptyGraph(format!("{source} contains no edges")));
    }
    Ok(raw)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum PreprocessStep {
    HeaderSkipped { line: usize },
    Symmetrized { input_edges: usize },
    SelfLoopsRemoved { count: usize },
    DuplicatesMerged { count: usize },
    LccExtracted { original_n: usize, original_m: usize, n: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMeta {
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub original_n: usize,
    pub original_m: usize,
    pub steps: Vec<PreprocessStep>,
}

impl GraphMeta {
    pub fn from_raw(raw: &RawEdges) -> Self {
        let mut steps = Vec::new();
        if let Some(line) = raw.skipped_header {
            steps.push(PreprocessStep::HeaderSkipped { line });
        }
        GraphMeta {
            source: raw.source.clone(),
            n: raw.n(),
            m: raw.edges.len(),
            original_n: raw.n(),
            original_m: raw.edges.len(),
            steps,
        }
    }

    /// Meta for a graph that was built in memory rather than loaded.
    pub fn for_graph(source: &str, graph: &Graph) -> Self {
        GraphMeta {
            source: source.to_string(),
            n: graph.n(),
            m: graph.m(),
            original_n: graph.n(),
            original_m: graph.m(),
            steps: Vec::new(),
        }
    }

    fn record(&mut self, step: PreprocessStep, graph: &Graph) {
        self.steps.push(step);
        self.n = graph.n();
        self.m = graph.m();
    }
}

/// Simple undirected graph in compressed adjacency form. Adjacency lists are
/// sorted ascending and symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a simple graph from arbitrary undirected edges over `0..n`;
    /// self-loops and duplicates are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let (graph, _, _) = build_simple(n, edges);
        graph
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.deg(v))
    }

    /// Unchecked degree.
    #[inline]
    pub fn deg(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Resolves a user-supplied vertex: original label first, then dense index.
    pub fn resolve(&self, token: &str) -> Result<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == token) {
                return Ok(i);
            }
        }
        match token.parse::<usize>() {
            Ok(v) if v < self.n() => Ok(v),
            Ok(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            Err(_) => Err(Error::InvalidParameter(format!("unknown vertex '{token}'"))),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u).iter().map(|&v| v as usize).filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn degree_sum(&self) -> usize {
        self.neighbors.len()
    }

    pub fn to_raw(&self) -> RawEdges {
        RawEdges {
            source: String::new(),
            edges: self.edges().collect(),
            labels: (0..self.n()).map(|v| self.label(v)).collect(),
            skipped_header: None,
        }
    }

    pub fn write_edge_list(&self, mut out: impl Write) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.label(u), self.label(v))?;
        }
        Ok(())
    }

    pub fn save_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = std::io::BufWriter::new(file);
        self.write_edge_list(&mut out).map_err(|e| Error::io(path, e))?;
        out.flush().map_err(|e| Error::io(path, e))
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        component_labels(self).1 == 1
    }
}

/// Returns the simple graph plus the number of self-loops and duplicate edges
/// that were dropped.
fn build_simple(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> (Graph, usize, usize) {
    let mut loops = 0;
    let mut total = 0;
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    for (u, v) in edges {
        assert!(u < n && v < n, "edge ({u}, {v}) outside 0..{n}");
        if u == v {
            loops += 1;
            continue;
        }
        total += 1;
        arcs.push((u as u32, v as u32));
        arcs.push((v as u32, u as u32));
    }
    arcs.sort_unstable();
    arcs.dedup();
    let unique = arcs.len() / 2;

    let mut offsets = vec![0usize; n + 1];
    for &(u, _) in &arcs {
        offsets[u as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let neighbors = arcs.into_iter().map(|(_, v)| v).collect();
    (Graph { offsets, neighbors, labels: None }, loops, total - unique)
}

pub fn simplify(raw: &RawEdges, meta: &mut GraphMeta) -> Result<Graph> {
    let (graph, loops, dups) = build_simple(raw.n(), raw.edges.iter().copied());
    let graph = graph.with_labels(raw.labels.clone())?;
    meta.record(PreprocessStep::Symmetrized { input_edges: raw.edges.len() }, &graph);
    if loops > 0 {
        meta.record(PreprocessStep::SelfLoopsRemoved { count: loops }, &graph);
    }
    if dups > 0 {
        meta.record(PreprocessStep::DuplicatesMerged { count: dups }, &graph);
    }
    if graph.m() == 0 {
        return Err(Error::EmptyGraph(format!("{} has no edges after simplification", raw.source)));
    }
    Ok(graph)
}

/// Component id per vertex and the number of components.
fn component_labels(graph: &Graph) -> (Vec<usize>, usize) {
    let n = graph.n();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = count;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &u in graph.neighbors(v) {
                let u = u as usize;
                if comp[u] == usize::MAX {
                    comp[u] = count;
                    queue.push_back(u);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Numeric labels compare numerically, anything else lexicographically.
fn compare_labels(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

pub fn largest_connected_component(graph: &Graph, meta: &mut GraphMeta) -> Result<Graph> {
    if graph.m() == 0 {
        return Err(Error::EmptyGraph("no edges".into()));
    }
    let (comp, count) = component_labels(graph);
    let mut sizes = vec![0usize; count];
    let mut min_label: Vec<Option<usize>> = vec![None; count];
    for v in 0..graph.n() {
        let c = comp[v];
        sizes[c] += 1;
        let replace = match min_label[c] {
            None => true,
            Some(w) => compare_labels(&graph.label(v), &graph.label(w)) == Ordering::Less,
        };
        if replace {
            min_label[c] = Some(v);
        }
    }
    let best = (0..count)
        .min_by(|&a, &b| {
            sizes[b].cmp(&sizes[a]).then_with(|| {
                compare_labels(&graph.label(min_label[a].unwrap()), &graph.label(min_label[b].unwrap()))
            })
        })
        .expect("at least one component");

    let mut new_id = vec![usize::MAX; graph.n()];
    let mut kept = Vec::with_capacity(sizes[best]);
    for v in 0..graph.n() {
        if comp[v] == best {
            new_id[v] = kept.len();
            kept.push(v);
        }
    }
    let edges = graph
        .edges()
        .filter(|&(u, _)| comp[u] == best)
        .map(|(u, v)| (new_id[u], new_id[v]));
    let mut lcc = Graph::from_edges(kept.len(), edges);
    if let Some(labels) = graph.labels() {
        lcc = lcc.with_labels(kept.iter().map(|&v| labels[v].clone()).collect())?;
    }
    if lcc.m() == 0 {
        return Err(Error::EmptyGraph("largest component has no edges".into()));
    }
    meta.record(
        PreprocessStep::LccExtracted { original_n: graph.n(), original_m: graph.m(), n: lcc.n(), m: lcc.m() },
        &lcc,
    );
    Ok(lcc)
}

/// Full pipeline: parse, simplify, restrict to the largest component.
pub fn load_graph(path: impl AsRef<Path>, options: &ParseOptions) -> Result<(Graph, GraphMeta)> {
    let raw = load_edge_list(path, options)?;
    let mut meta = GraphMeta::from_raw(&raw);
    let simple = simplify(&raw, &mut meta)?;
    let graph = largest_connected_component(&simple, &mut meta)?;
    Ok((graph, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn parse(text: &str) -> Result<RawEdges> {
        parse_edge_list(text.as_bytes(), "mem", &ParseOptions::default())
    }

    fn pipeline(text: &str) -> (Graph, GraphMeta) {
        let raw = parse(text).unwrap();
        let mut meta = GraphMeta::from_raw(&raw);
        let g = simplify(&raw, &mut meta).unwrap();
        let g = largest_connected_component(&g, &mut meta).unwrap();
        (g, meta)
    }

    #[test]
    fn parses_integer_pairs() {
        let raw = parse("0 1\n1 2").unwrap();
        assert_eq!(raw.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(raw.n(), 3);
    }

    #[test]
    fn skips_comments_and_keeps_string_labels() {
        let raw = parse("# c\na b\nb a").unwrap();
        assert_eq!(raw.edges, vec![(0, 1), (1, 0)]);
        assert_eq!(raw.labels, vec!["a", "b"]);
        let raw = parse("% mm comment\n\n x y \n").unwrap();
        assert_eq!(raw.labels, vec!["x", "y"]);
    }

    #[test]
    fn self_loop_survives_parsing() {
        let raw = parse("0 0\n0 1").unwrap();
        assert_eq!(raw.edges, vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn matrix_market_header_is_skipped() {
        let raw = parse("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(raw.skipped_header, Some(2));
        assert_eq!(raw.edges.len(), 2);
        let no_detect = parse_edge_list("3 3 2\n1 2\n".as_bytes(), "mem", &ParseOptions { detect_header: false })
            .unwrap();
        assert_eq!(no_detect.edges.len(), 2);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match parse("0 1\n# ok\n7\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("# nothing\n"), Err(Error::EmptyGraph(_))));
    }

    #[test]
    fn unreadable_file() {
        let err = load_edge_list("/nonexistent/graph.el", &ParseOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn simplify_drops_loops_and_duplicates() {
        let raw = RawEdges { edges: vec![(0, 0), (0, 1), (1, 0)], labels: vec!["0".into(), "1".into()], ..Default::default() };
        let mut meta = GraphMeta::from_raw(&raw);
        let g = simplify(&raw, &mut meta).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(meta.steps.contains(&PreprocessStep::SelfLoopsRemoved { count: 1 }));
        assert!(meta.steps.contains(&PreprocessStep::DuplicatesMerged { count: 1 }));

        let (tri, _) = pipeline("0 1\n1 2\n2 0");
        assert_eq!(tri.m(), 3);
        assert!((0..3).all(|v| tri.deg(v) == 2));

        let (multi, _) = pipeline("0 1\n0 1\n0 1");
        assert_eq!(multi.m(), 1);
    }

    #[test]
    fn simplify_rejects_loop_only_input() {
        let raw = parse("0 0\n1 1").unwrap();
        let mut meta = GraphMeta::from_raw(&raw);
        assert!(matches!(simplify(&raw, &mut meta), Err(Error::EmptyGraph(_))));
    }

    #[test]
    fn lcc_picks_largest_component() {
        let text = "0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n6 7\n6 8\n6 9\n7 8\n7 9\n8 9\n";
        let (g, meta) = pipeline(text);
        assert_eq!((g.n(), g.m()), (4, 6));
        assert_eq!(g.labels().unwrap(), &["6", "7", "8", "9"]);
        assert!(matches!(meta.steps.last(), Some(PreprocessStep::LccExtracted { original_n: 10, original_m: 12, .. })));

        let (p3, _) = pipeline("0 1\n1 2\n5 6");
        assert_eq!((p3.n(), p3.m()), (3, 2));
    }

    #[test]
    fn lcc_of_connected_graph_is_identity() {
        let g = generators::grid(4, 5);
        let mut meta = GraphMeta::for_graph("grid", &g);
        let h = largest_connected_component(&g, &mut meta).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn lcc_tie_breaks_on_smallest_label() {
        let (g, _) = pipeline("10 11\n2 3\n");
        assert_eq!(g.labels().unwrap(), &["2", "3"]);
        let (g, _) = pipeline("b c\na z\n");
        assert_eq!(g.labels().unwrap(), &["a", "z"]);
    }

    #[test]
    fn degrees() {
        let star = generators::star(4);
        assert_eq!(star.degree(0).unwrap(), 4);
        assert_eq!(star.degree(3).unwrap(), 1);
        let p5 = generators::path(5);
        assert_eq!(p5.degree(2).unwrap(), 2);
        assert!(matches!(p5.degree(5), Err(Error::VertexOutOfRange { vertex: 5, n: 5 })));
    }

    #[test]
    fn meta_serializes() {
        let (_, meta) = pipeline("0 0\n0 1\n1 2\n5 6");
        let json = serde_json::to_value(&meta).unwrap();
        assert_eq!(json["n"], 3);
        assert_eq!(json["original_n"], 5);
        assert_eq!(json["original_m"], 4);
        assert_eq!(json["steps"][0]["step"], "symmetrized");
        assert_eq!(json["steps"].as_array().unwrap().last().unwrap()["step"], "lcc_extracted");
    }

    #[test]
    fn resolve_prefers_labels() {
        let (g, _) = pipeline("10 20\n20 30\n");
        assert_eq!(g.resolve("20").unwrap(), 1);
        assert_eq!(g.resolve("0").unwrap(), 0);
        assert!(g.resolve("99").is_err());
    }
}
