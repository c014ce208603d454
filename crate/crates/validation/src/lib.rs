//! Reference oracles and seeded graph suites for checking `bidi-core`.
//! Everything here is written from the definitions, without calling the
//! analyzer code it is used to check.

use std::collections::VecDeque;

use bidi_core::generators::random_connected;
use bidi_core::graph::Graph;
use bidi_core::rng::derived;
use bidi_core::Base;
use rand::Rng;

/// `count` random connected graphs with `2 <= n <= max_n` and up to `2n`
/// extra edges.
pub fn random_suite(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    (0..count)
        .map(|i| {
            let mut rng = derived(seed, i as u64);
            let n = rng.gen_range(2..=max_n as u64) as usize;
            let extra = rng.gen_range(0..=2 * n as u64) as usize;
            random_connected(n, extra, rng.gen())
        })
        .collect()
}

/// Plain queue BFS distances.
pub fn bfs(g: &Graph, src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            let v = v as usize;
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Step costs from the definitions: `cs[i-1]` is the degree sum of the
/// vertices at distance `i-1` from `s`, `ct[i-1]` the degree sum at distance
/// `d-i` from `t`.
pub struct OracleProfile {
    pub d: usize,
    pub m: u64,
    pub cs: Vec<u64>,
    pub ct: Vec<u64>,
}

pub fn oracle_profile(g: &Graph, ds: &[usize], dt: &[usize], t: usize) -> OracleProfile {
    let d = ds[t];
    let layer_cost = |dist: &[usize], k: usize| -> u64 {
        (0..g.n()).filter(|&v| dist[v] == k).map(|v| g.neighbors(v).len() as u64).sum()
    };
    let cs = (1..=d).map(|i| layer_cost(ds, i - 1)).collect();
    let ct = (1..=d).map(|i| layer_cost(dt, d - i)).collect();
    OracleProfile { d, m: g.m() as u64, cs, ct }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleLandmarks {
    pub cheap_s: Option<usize>,
    pub cheap_t: Option<usize>,
    pub expan_s: usize,
    pub expan_t: usize,
    /// `b⁺` as an unreduced fraction `(num, den)`.
    pub b_plus: (u64, u64),
    pub rho: Option<f64>,
}

fn at_most_budget(cost: u64, m: u64, alpha: f64) -> bool {
    cost as f64 <= (m as f64).powf(alpha) * (1.0 + 1e-9)
}

/// `next >= (num/den) * prev`.
fn grows(num: u64, den: u64, prev: u64, next: u64) -> bool {
    next as u128 * den as u128 >= num as u128 * prev as u128
}

pub fn oracle_landmarks(p: &OracleProfile, alpha: f64, b: (u64, u64)) -> OracleLandmarks {
    let d = p.d;
    let c_s = |i: usize| p.cs[i - 1];
    let c_t = |i: usize| p.ct[i - 1];
    let cheap_s = (1..=d).filter(|&j| at_most_budget((1..=j).map(c_s).sum(), p.m, alpha)).max();
    let cheap_t = (1..=d).filter(|&j| at_most_budget((j..=d).map(c_t).sum(), p.m, alpha)).min();
    let expan_s = (1..=d).filter(|&j| (1..j).all(|k| grows(b.0, b.1, c_s(k), c_s(k + 1)))).max().unwrap();
    let expan_t = (1..=d).filter(|&j| (j + 1..=d).all(|k| grows(b.0, b.1, c_t(k), c_t(k - 1)))).min().unwrap();

    let mut b_plus = b;
    let mut bigger = |num: u64, den: u64| {
        if num as u128 * b_plus.1 as u128 > b_plus.0 as u128 * den as u128 {
            b_plus = (num, den);
        }
    };
    for k in 1..d {
        bigger(c_s(k + 1), c_s(k));
        bigger(c_t(k), c_t(k + 1));
    }

    let rho = match (cheap_s, cheap_t) {
        (Some(cs), Some(ct)) => {
            let (cs, ct, es, et, d) = (cs as i64, ct as i64, expan_s as i64, expan_t as i64, d as i64);
            let s1 = es;
            let s2 = ct - es - 1;
            let t1 = d - et + 1;
            let t2 = et - cs - 1;
            Some(s2.max(t2).max(0) as f64 / s1.min(t1) as f64)
        }
        _ => None,
    };
    OracleLandmarks { cheap_s, cheap_t, expan_s, expan_t, b_plus, rho }
}

pub fn frac(b: Base) -> (u64, u64) {
    (b.numer(), b.denom())
}

/// Stated form of the distance bound: with `c = expan_s / d`,
/// `d <= log_b(2m) / c`.
pub fn expanding_distance_bound(d: usize, expan_s: usize, m: u64, b: f64) -> bool {
    let c = expan_s as f64 / d as f64;
    d as f64 <= (2.0 * m as f64).ln() / b.ln() / c * (1.0 + 1e-12)
}

/// Last-step share of a b-expanding prefix `[1, j]`: `cs[j] / cs([1, j]) >= (b-1)/b`.
pub fn last_step_share_bound(cs: &[u64], j: usize, b: (u64, u64)) -> bool {
    let total: u128 = cs[..j].iter().map(|&c| c as u128).sum();
    let (num, den) = (b.0 as u128, b.1 as u128);
    cs[j - 1] as u128 * num >= (num - den) * total
}

/// Length of a b-expanding cheap prefix: `cheap_s <= log_b(m^α) + 1`.
pub fn cheap_prefix_length_bound(cheap_s: usize, m: u64, alpha: f64, b: f64) -> bool {
    (cheap_s as f64 - 1.0) <= alpha * (m as f64).ln() / b.ln() + 1e-9
}
