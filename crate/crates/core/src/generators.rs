//! Deterministic and seeded synthetic graph families.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, GraphMeta};
use crate::rng::seeded;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `rows x cols` grid; vertex `(r, c)` has index `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// Complete `branching`-ary tree of the given depth, root at vertex 0,
/// vertices numbered in BFS order.
pub fn complete_tree(branching: usize, depth: usize) -> Graph {
    let mut edges = Vec::new();
    let mut layer = vec![0usize];
    let mut next_id = 1;
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * branching);
        for &p in &layer {
            for _ in 0..branching {
                edges.push((p, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        layer = next;
    }
    Graph::from_edges(next_id, edges)
}

/// Two complete `branching`-ary trees of depth `depth` whose roots are joined
/// by a path of `bridge` edges. Returns the graph and the two roots.
///
/// From either root the search space keeps growing for `depth` steps, so for
/// `bridge <= depth` the whole shortest path between the roots is an
/// expansion overlap.
pub fn bridged_tree_pair(branching: usize, depth: usize, bridge: usize) -> (Graph, usize, usize) {
    assert!(bridge >= 1);
    let tree = complete_tree(branching, depth);
    let size = tree.n();
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    edges.extend(tree.edges().map(|(u, v)| (u + size, v + size)));
    let s = 0;
    let t = size;
    let mut prev = s;
    for i in 1..bridge {
        let inner = 2 * size + i - 1;
        edges.push((prev, inner));
        prev = inner;
    }
    edges.push((prev, t));
    (Graph::from_edges(2 * size + bridge - 1, edges), s, t)
}

/// Random connected graph: a random recursive spanning tree plus `extra`
/// uniformly random edges (loops and repeats dropped).
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Graph {
    assert!(n >= 2);
    let mut rng = seeded(seed);
    let mut edges = Vec::with_capacity(n - 1 + extra);
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    Graph::from_edges(n, edges)
}

/// Near-regular random graph from the configuration model, restricted to its
/// largest component.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Graph {
    assert!((n * degree).is_multiple_of(2), "n * degree must be even");
    let mut rng = seeded(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    stubs.shuffle(&mut rng);
    let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
    let g = Graph::from_edges(n, edges);
    let mut meta = GraphMeta::for_graph("random_regular", &g);
    crate::graph::largest_connected_component(&g, &mut meta).expect("nonempty")
}
