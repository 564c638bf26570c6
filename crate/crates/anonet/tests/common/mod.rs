//! Independent oracles used by the integration and acceptance suites.
//!
//! Everything here deliberately avoids the library's graph and sampling code
//! paths: betweenness is computed by explicitly enumerating every shortest
//! path with exact rational accumulation, and PageRank/eigenvector run over
//! dense matrices.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use anonet::ingest::{AccountId, FollowEdge};
use anonet::netgraph::{build_graph, FollowGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Graph helpers
// ---------------------------------------------------------------------------

/// Build a FollowGraph over nodes "n00".."nXX" from index edges.
pub fn graph_from_indices(n: usize, edges: &[(usize, usize)]) -> FollowGraph {
    let ids: Vec<AccountId> = (0..n).map(|i| AccountId::new(format!("n{i:02}"))).collect();
    let follow_edges: Vec<FollowEdge> = edges
        .iter()
        .map(|&(a, b)| FollowEdge {
            follower_id: ids[a].clone(),
            followee_id: ids[b].clone(),
        })
        .collect();
    let filter: BTreeSet<AccountId> = ids.into_iter().collect();
    build_graph(&follow_edges, &filter).expect("non-empty filter")
}

/// Adjacency lists (out-neighbours, deduplicated, no self-loops) for oracle
/// computations, independent of FollowGraph.
pub fn adjacency_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a != b && !adj[a].contains(&b) {
            adj[a].push(b);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// Random digraph: each ordered pair (i, j), i != j, gets an edge with
/// probability `p`.
pub fn random_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

// ---------------------------------------------------------------------------
// Exact rational arithmetic for the betweenness oracle
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    num: i128,
    den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Frac {
    pub fn zero() -> Self {
        Frac { num: 0, den: 1 }
    }

    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0);
        let g = gcd(num, den).max(1);
        Frac {
            num: num / g,
            den: den / g,
        }
    }

    pub fn add(self, other: Frac) -> Frac {
        let num = self
            .num
            .checked_mul(other.den)
            .zip(other.num.checked_mul(self.den))
            .map(|(a, b)| a.checked_add(b).expect("fraction overflow"))
            .expect("fraction overflow");
        let den = self.den.checked_mul(other.den).expect("fraction overflow");
        Frac::new(num, den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

// ---------------------------------------------------------------------------
// Betweenness oracle: exhaustive shortest-path enumeration
// ---------------------------------------------------------------------------

fn bfs_distances(adj: &[Vec<usize>], source: usize) -> Vec<i64> {
    let mut dist = vec![-1i64; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] < 0 {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Enumerate every shortest path s -> t along the BFS-distance DAG, counting
/// total paths and per-interior-node occurrences.
fn enumerate_paths(
    adj: &[Vec<usize>],
    dist: &[i64],
    at: usize,
    target: usize,
    interior: &mut Vec<usize>,
    total: &mut u64,
    through: &mut [u64],
) {
    if at == target {
        *total += 1;
        for &v in interior.iter() {
            through[v] += 1;
        }
        return;
    }
    for &w in &adj[at] {
        if dist[w] == dist[at] + 1 {
            if w != target {
                interior.push(w);
            }
            enumerate_paths(adj, dist, w, target, interior, total, through);
            if w != target {
                interior.pop();
            }
        }
    }
}

/// Betweenness by brute force: for every ordered pair (s, t) accumulate the
/// exact rational sigma_st(v) / sigma_st per interior node v, then convert
/// to f64 once at the end.
pub fn betweenness_oracle(adj: &[Vec<usize>]) -> Vec<f64> {
    let n = adj.len();
    let mut acc = vec![Frac::zero(); n];
    for s in 0..n {
        let dist = bfs_distances(adj, s);
        for t in 0..n {
            if t == s || dist[t] < 0 {
                continue;
            }
            let mut total = 0u64;
            let mut through = vec![0u64; n];
            let mut interior = Vec::new();
            enumerate_paths(adj, &dist, s, t, &mut interior, &mut total, &mut through);
            assert!(total > 0, "reachable target must have a path");
            for v in 0..n {
                if v != s && v != t && through[v] > 0 {
                    acc[v] = acc[v].add(Frac::new(through[v] as i128, total as i128));
                }
            }
        }
    }
    acc.into_iter().map(Frac::to_f64).collect()
}

// ---------------------------------------------------------------------------
// Dense-matrix oracles
// ---------------------------------------------------------------------------

/// Dense PageRank: explicit row-stochastic transition matrix (dangling rows
/// become uniform), iterated to a much tighter tolerance than the
/// implementation under test.
pub fn pagerank_dense_oracle(adj: &[Vec<usize>], damping: f64) -> Vec<f64> {
    let n = adj.len();
    let nf = n as f64;
    let mut transition = vec![vec![0.0f64; n]; n];
    for (i, neighbours) in adj.iter().enumerate() {
        if neighbours.is_empty() {
            transition[i].fill(1.0 / nf);
        } else {
            let share = 1.0 / neighbours.len() as f64;
            for &j in neighbours {
                transition[i][j] = share;
            }
        }
    }
    let mut x = vec![1.0 / nf; n];
    for _ in 0..200_000 {
        let mut next = vec![(1.0 - damping) / nf; n];
        for (i, row) in transition.iter().enumerate() {
            for (j, &prob) in row.iter().enumerate() {
                next[j] += damping * x[i] * prob;
            }
        }
        let diff: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if diff < 1e-14 {
            break;
        }
    }
    x
}

/// Dense eigenvector oracle: power iteration of the shifted dense matrix
/// (I + A)^T, L2-normalised, run to 1e-13.
pub fn eigenvector_dense_oracle(adj: &[Vec<usize>], max_iter: usize) -> Option<Vec<f64>> {
    let n = adj.len();
    let mut a = vec![vec![0.0f64; n]; n];
    for (i, neighbours) in adj.iter().enumerate() {
        for &j in neighbours {
            a[i][j] = 1.0;
        }
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..max_iter {
        let mut next = x.clone();
        for (i, row) in a.iter().enumerate() {
            for (j, &weight) in row.iter().enumerate() {
                next[j] += weight * x[i];
            }
        }
        let norm: f64 = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            for v in &mut next {
                *v /= norm;
            }
        }
        let diff: f64 = next.iter().zip(&x).map(|(p, q)| (p - q).abs()).sum();
        x = next;
        if diff < 1e-13 {
            return Some(x);
        }
    }
    None
}

pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

// ---------------------------------------------------------------------------
// Topic permutation matching
// ---------------------------------------------------------------------------

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn heap(current: &mut Vec<usize>, size: usize, out: &mut Vec<Vec<usize>>) {
        if size == 1 {
            out.push(current.clone());
            return;
        }
        for i in 0..size {
            heap(current, size - 1, out);
            if size % 2 == 1 {
                current.swap(0, size - 1);
            } else {
                current.swap(i, size - 1);
            }
        }
    }
    let mut base: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    heap(&mut base, k, &mut out);
    out
}

/// Mean top-word overlap fraction under the best topic permutation
/// (exhaustive matching; intended for k <= 8).
pub fn best_permutation_overlap(fitted: &[Vec<String>], planted: &[Vec<String>]) -> f64 {
    assert_eq!(fitted.len(), planted.len());
    let k = fitted.len();
    assert!(k <= 8, "exhaustive matching is for k <= 8");
    let mut best = 0.0f64;
    for perm in permutations(k) {
        let mut total = 0.0;
        for (topic, &assigned) in perm.iter().enumerate() {
            let fitted_set: BTreeSet<&String> = fitted[topic].iter().collect();
            let planted_set: BTreeSet<&String> = planted[assigned].iter().collect();
            let overlap = fitted_set.intersection(&planted_set).count() as f64;
            total += overlap / planted[assigned].len().max(1) as f64;
        }
        best = best.max(total / k as f64);
    }
    best
}
