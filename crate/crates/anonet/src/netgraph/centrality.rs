//! The four influence measures over the follower graph, plus min-max
//! normalization and mean-fusion ranking.
//!
//! Betweenness parallelises across source nodes in fixed-size chunks whose
//! partial sums are reduced in chunk order, so results are bitwise identical
//! for any worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ingest::AccountId;

use super::graph::FollowGraph;
use super::NetgraphError;

/// Whether a node's eigenvector score flows from its followers (incoming,
/// the default: being followed confers influence) or from the accounts it
/// follows (outgoing).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfluenceDirection {
    Incoming,
    Outgoing,
}

/// Degree variant; total (in + out) is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    Total,
    In,
    Out,
}

/// Degree centrality: degree / (n - 1). A single-node graph scores 0 by
/// convention; totals in dense digraphs may exceed 1 (a 2-cycle scores 2).
pub fn degree_centrality(g: &FollowGraph, mode: DegreeMode) -> Vec<f64> {
    let n = g.node_count();
    if n <= 1 {
        return vec![0.0; n];
    }
    let denom = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let d = match mode {
                DegreeMode::Total => g.in_degree(i) + g.out_degree(i),
                DegreeMode::In => g.in_degree(i),
                DegreeMode::Out => g.out_degree(i),
            };
            d as f64 / denom
        })
        .collect()
}

fn l2_normalize(v: &mut [f64]) {
    let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Eigenvector centrality by power iteration on x <- x + A^T x (incoming
/// influence; the shift keeps periodic structures from oscillating),
/// L2-normalised each round. Converges when successive iterates differ by
/// less than `tol` in L1. An edgeless graph returns the uniform vector by
/// documented convention.
pub fn eigenvector_centrality(
    g: &FollowGraph,
    direction: InfluenceDirection,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>, NetgraphError> {
    let n = g.node_count();
    if n == 0 {
        return Err(NetgraphError::EmptyGraph);
    }
    let uniform = 1.0 / (n as f64).sqrt();
    if g.edge_count() == 0 {
        return Ok(vec![uniform; n]);
    }
    let mut x = vec![uniform; n];
    for _ in 0..max_iter {
        let mut next = x.clone();
        for (p, q) in g.edges() {
            match direction {
                InfluenceDirection::Incoming => next[q] += x[p],
                InfluenceDirection::Outgoing => next[p] += x[q],
            }
        }
        l2_normalize(&mut next);
        let diff: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if diff < tol {
            return Ok(x);
        }
    }
    Err(NetgraphError::NonConvergence {
        measure: "eigenvector",
        iterations: max_iter,
    })
}

/// Damped random-surfer fixed point. Dangling mass is redistributed
/// uniformly; scores sum to 1.
pub fn pagerank(
    g: &FollowGraph,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>, NetgraphError> {
    let n = g.node_count();
    if n == 0 {
        return Err(NetgraphError::EmptyGraph);
    }
    let nf = n as f64;
    let mut x = vec![1.0 / nf; n];
    for _ in 0..max_iter {
        let dangling: f64 = (0..n).filter(|&i| g.out_degree(i) == 0).map(|i| x[i]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        let mut next = vec![base; n];
        for (p, &mass) in x.iter().enumerate() {
            let out = g.out_degree(p);
            if out > 0 {
                let share = damping * mass / out as f64;
                for &q in g.out_neighbors(p) {
                    next[q] += share;
                }
            }
        }
        let diff: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if diff < tol {
            return Ok(x);
        }
    }
    Err(NetgraphError::NonConvergence {
        measure: "pagerank",
        iterations: max_iter,
    })
}

/// Raw betweenness values plus the standard directed normalization
/// 1/((n-1)(n-2)) reported alongside.
#[derive(Debug, Clone)]
pub struct BetweennessScores {
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
}

/// Source nodes are processed in fixed chunks of this size; chunk partials
/// are summed in chunk order regardless of worker count.
const BETWEENNESS_CHUNK: usize = 64;

/// Betweenness centrality over directed shortest paths (Brandes'
/// single-source accumulation, one BFS per source).
pub fn betweenness_centrality(g: &FollowGraph) -> BetweennessScores {
    let n = g.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(BETWEENNESS_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            for &s in chunk {
                accumulate_from_source(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut raw = vec![0.0; n];
    for partial in partials {
        for (r, p) in raw.iter_mut().zip(partial) {
            *r += p;
        }
    }
    let factor = if n > 2 {
        1.0 / ((n - 1) as f64 * (n - 2) as f64)
    } else {
        0.0
    };
    let normalized = raw.iter().map(|&v| v * factor).collect();
    BetweennessScores { raw, normalized }
}

fn accumulate_from_source(g: &FollowGraph, s: usize, centrality: &mut [f64]) {
    let n = g.node_count();
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    sigma[s] = 1.0;
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        stack.push(v);
        for &w in g.out_neighbors(v) {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                predecessors[w].push(v);
            }
        }
    }
    let mut delta = vec![0.0f64; n];
    while let Some(w) = stack.pop() {
        for &v in &predecessors[w] {
            delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w]);
        }
        if w != s {
            centrality[w] += delta[w];
        }
    }
}

/// Min-max normalization into [0, 1]; a constant input maps to all zeros by
/// documented convention.
pub fn normalize_scores(raw: &[f64]) -> Vec<f64> {
    if raw.is_empty() {
        return Vec::new();
    }
    let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == min {
        return vec![0.0; raw.len()];
    }
    let range = max - min;
    raw.iter().map(|&v| (v - min) / range).collect()
}

/// One fused entry: the arithmetic mean of the four normalized scores and
/// its 1-based rank.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FusedScore {
    pub account_id: AccountId,
    pub fused: f64,
    pub rank: usize,
}

/// Fuse four normalized score sets (identical node sets required) into mean
/// scores with a total-order ranking: fused descending, then account id
/// ascending.
pub fn fuse_and_rank(
    ids: &[AccountId],
    normalized: [&[f64]; 4],
) -> Result<Vec<FusedScore>, NetgraphError> {
    for set in normalized {
        if set.len() != ids.len() {
            return Err(NetgraphError::LengthMismatch {
                expected: ids.len(),
                got: set.len(),
            });
        }
    }
    let mut fused: Vec<(usize, f64)> = (0..ids.len())
        .map(|i| {
            let sum: f64 = normalized.iter().map(|set| set[i]).sum();
            (i, sum / 4.0)
        })
        .collect();
    fused.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| ids[a.0].cmp(&ids[b.0])));
    Ok(fused
        .into_iter()
        .enumerate()
        .map(|(pos, (i, value))| FusedScore {
            account_id: ids[i].clone(),
            fused: value,
            rank: pos + 1,
        })
        .collect())
}

/// Full per-account centrality report row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralityEntry {
    pub account_id: AccountId,
    pub degree_raw: f64,
    pub eigenvector_raw: f64,
    pub pagerank_raw: f64,
    pub betweenness_raw: f64,
    pub degree_norm: f64,
    pub eigenvector_norm: f64,
    pub pagerank_norm: f64,
    pub betweenness_norm: f64,
    pub fused: f64,
    pub rank: usize,
}

/// Report rows sorted by rank.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralityReport {
    pub entries: Vec<CentralityEntry>,
}

/// Options for the combined report.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CentralityOptions {
    pub damping: f64,
    pub pagerank_tol: f64,
    pub pagerank_max_iter: usize,
    pub eigenvector_tol: f64,
    pub eigenvector_max_iter: usize,
    pub direction: InfluenceDirection,
    pub degree_mode: DegreeMode,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        CentralityOptions {
            damping: 0.85,
            pagerank_tol: 1e-9,
            pagerank_max_iter: 200,
            eigenvector_tol: 1e-8,
            eigenvector_max_iter: 1000,
            direction: InfluenceDirection::Incoming,
            degree_mode: DegreeMode::Total,
        }
    }
}

/// Run all four measures, min-max normalize each, fuse, and rank.
pub fn centrality_report(
    g: &FollowGraph,
    opts: &CentralityOptions,
) -> Result<CentralityReport, NetgraphError> {
    let degree = degree_centrality(g, opts.degree_mode);
    let eigen = eigenvector_centrality(
        g,
        opts.direction,
        opts.eigenvector_tol,
        opts.eigenvector_max_iter,
    )?;
    let pr = pagerank(g, opts.damping, opts.pagerank_tol, opts.pagerank_max_iter)?;
    let betweenness = betweenness_centrality(g);

    let degree_norm = normalize_scores(&degree);
    let eigen_norm = normalize_scores(&eigen);
    let pr_norm = normalize_scores(&pr);
    let btw_norm = normalize_scores(&betweenness.raw);

    let fused = fuse_and_rank(g.nodes(), [&degree_norm, &eigen_norm, &pr_norm, &btw_norm])?;

    let entries = fused
        .into_iter()
        .map(|f| {
            let i = g.index_of(&f.account_id).expect("ranked id in graph");
            CentralityEntry {
                account_id: f.account_id,
                degree_raw: degree[i],
                eigenvector_raw: eigen[i],
                pagerank_raw: pr[i],
                betweenness_raw: betweenness.raw[i],
                degree_norm: degree_norm[i],
                eigenvector_norm: eigen_norm[i],
                pagerank_norm: pr_norm[i],
                betweenness_norm: btw_norm[i],
                fused: f.fused,
                rank: f.rank,
            }
        })
        .collect();
    Ok(CentralityReport { entries })
}

/// Rank-vs-score rows for one measure, descending.
pub fn score_curve(ids: &[AccountId], scores: &[f64]) -> Vec<(usize, AccountId, f64)> {
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .total_cmp(&scores[a])
            .then_with(|| ids[a].cmp(&ids[b]))
    });
    order
        .into_iter()
        .enumerate()
        .map(|(pos, i)| (pos + 1, ids[i].clone(), scores[i]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::FollowEdge;
    use crate::netgraph::build_graph;
    use std::collections::BTreeSet;

    fn graph(edges: &[(&str, &str)], nodes: &[&str]) -> FollowGraph {
        let edges: Vec<FollowEdge> = edges
            .iter()
            .map(|&(a, b)| FollowEdge {
                follower_id: a.into(),
                followee_id: b.into(),
            })
            .collect();
        let filter: BTreeSet<AccountId> = nodes.iter().map(|&s| AccountId::from(s)).collect();
        build_graph(&edges, &filter).unwrap()
    }

    #[test]
    fn degree_on_directed_star() {
        // Leaves b, c, d each follow hub a.
        let g = graph(&[("b", "a"), ("c", "a"), ("d", "a")], &["a", "b", "c", "d"]);
        let scores = degree_centrality(&g, DegreeMode::Total);
        let hub = g.index_of(&"a".into()).unwrap();
        assert_eq!(scores[hub], 1.0);
        for leaf in ["b", "c", "d"] {
            assert!((scores[g.index_of(&leaf.into()).unwrap()] - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degree_two_cycle_exceeds_one() {
        let g = graph(&[("a", "b"), ("b", "a")], &["a", "b"]);
        let scores = degree_centrality(&g, DegreeMode::Total);
        assert_eq!(scores, vec![2.0, 2.0]);
    }

    #[test]
    fn isolated_node_has_zero_degree() {
        let g = graph(&[("a", "b")], &["a", "b", "c"]);
        let scores = degree_centrality(&g, DegreeMode::Total);
        assert_eq!(scores[g.index_of(&"c".into()).unwrap()], 0.0);
    }

    #[test]
    fn eigenvector_uniform_on_cycle() {
        let g = graph(
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
            &["a", "b", "c", "d"],
        );
        let scores = eigenvector_centrality(&g, InfluenceDirection::Incoming, 1e-10, 2000).unwrap();
        for s in &scores {
            assert!((s - 0.5).abs() < 1e-6, "{scores:?}");
        }
    }

    #[test]
    fn eigenvector_edgeless_uniform_convention() {
        let g = graph(&[], &["a", "b", "c"]);
        let scores = eigenvector_centrality(&g, InfluenceDirection::Incoming, 1e-8, 100).unwrap();
        let expected = 1.0 / 3f64.sqrt();
        for s in &scores {
            assert!((s - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn pagerank_single_node_and_two_cycle() {
        let g = graph(&[], &["a"]);
        assert_eq!(pagerank(&g, 0.85, 1e-9, 200).unwrap(), vec![1.0]);

        let g = graph(&[("a", "b"), ("b", "a")], &["a", "b"]);
        let scores = pagerank(&g, 0.85, 1e-12, 500).unwrap();
        assert!((scores[0] - 0.5).abs() < 1e-9);
        assert!((scores[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn pagerank_sums_to_one_with_dangling_nodes() {
        // b and c dangle.
        let g = graph(&[("a", "b"), ("a", "c")], &["a", "b", "c"]);
        let scores = pagerank(&g, 0.85, 1e-12, 500).unwrap();
        let sum: f64 = scores.iter().sum();
        assert!((sum - 1.0).abs() < 1e-6, "sum {sum}");
    }

    #[test]
    fn betweenness_on_path() {
        let g = graph(&[("a", "b"), ("b", "c")], &["a", "b", "c"]);
        let scores = betweenness_centrality(&g);
        let idx = |s: &str| g.index_of(&s.into()).unwrap();
        assert_eq!(scores.raw[idx("b")], 1.0);
        assert_eq!(scores.raw[idx("a")], 0.0);
        assert_eq!(scores.raw[idx("c")], 0.0);
        // n = 3: normalization factor 1/((n-1)(n-2)) = 1/2.
        assert_eq!(scores.normalized[idx("b")], 0.5);
    }

    #[test]
    fn betweenness_zero_on_complete_digraph() {
        let nodes = ["a", "b", "c", "d"];
        let mut edges = Vec::new();
        for p in nodes {
            for q in nodes {
                if p != q {
                    edges.push((p, q));
                }
            }
        }
        let g = graph(&edges, &nodes);
        let scores = betweenness_centrality(&g);
        assert!(scores.raw.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn normalize_reference_cases() {
        assert_eq!(normalize_scores(&[1.0, 3.0, 5.0]), vec![0.0, 0.5, 1.0]);
        assert_eq!(normalize_scores(&[7.0, 7.0]), vec![0.0, 0.0]);
        assert_eq!(normalize_scores(&[0.0, 0.25, 1.0]), vec![0.0, 0.25, 1.0]);
    }

    #[test]
    fn fuse_and_rank_reference_cases() {
        let ids: Vec<AccountId> = vec!["a".into(), "b".into()];
        let top = [1.0, 0.0];
        let rest = [1.0, 0.0];
        let third = [1.0, 1.0];
        let fourth = [1.0, 0.0];
        let fused = fuse_and_rank(&ids, [&top, &rest, &third, &fourth]).unwrap();
        assert_eq!(fused[0].account_id.as_str(), "a");
        assert_eq!(fused[0].fused, 1.0);
        assert_eq!(fused[0].rank, 1);
        assert_eq!(fused[1].fused, 0.25);
    }

    #[test]
    fn fused_ties_break_by_account_id() {
        let ids: Vec<AccountId> = vec!["zz".into(), "aa".into()];
        let s = [0.5, 0.5];
        let fused = fuse_and_rank(&ids, [&s, &s, &s, &s]).unwrap();
        assert_eq!(fused[0].account_id.as_str(), "aa");
        assert_eq!(fused[1].account_id.as_str(), "zz");
    }

    #[test]
    fn fuse_rejects_mismatched_sets() {
        let ids: Vec<AccountId> = vec!["a".into(), "b".into()];
        let good = [0.1, 0.2];
        let bad = [0.5];
        assert!(matches!(
            fuse_and_rank(&ids, [&good, &good, &good, &bad]),
            Err(NetgraphError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn affine_rescaling_leaves_normalized_scores_unchanged() {
        let raw = [3.0, 9.0, 6.0, 12.0];
        let rescaled: Vec<f64> = raw.iter().map(|v| 2.5 * v + 7.0).collect();
        assert_eq!(normalize_scores(&raw), normalize_scores(&rescaled));
    }

    #[test]
    fn betweenness_identical_across_worker_counts() {
        let mut edges = Vec::new();
        let names: Vec<String> = (0..40).map(|i| format!("n{i:02}")).collect();
        for i in 0..40usize {
            edges.push((names[i].as_str(), names[(i * 7 + 3) % 40].as_str()));
            edges.push((names[i].as_str(), names[(i * 11 + 5) % 40].as_str()));
        }
        let owned_edges: Vec<(String, String)> = edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let edge_refs: Vec<(&str, &str)> = owned_edges
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let g = graph(&edge_refs, &name_refs);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| betweenness_centrality(&g));
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| betweenness_centrality(&g));
        assert_eq!(one.raw, four.raw);
    }
}
