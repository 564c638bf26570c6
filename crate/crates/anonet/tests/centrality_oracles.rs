//! Oracle-backed checks for the centrality measures: dense-matrix routes
//! for PageRank and eigenvector, exhaustive path enumeration for
//! betweenness, and permutation-equivariance properties.

mod common;

use std::collections::BTreeSet;

use anonet::ingest::{AccountId, FollowEdge};
use anonet::netgraph::{
    betweenness_centrality, build_graph, eigenvector_centrality, pagerank, InfluenceDirection,
};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn pagerank_three_node_chain_matches_dense_oracle() {
    let edges = [(0, 1), (1, 2)];
    let g = graph_from_indices(3, &edges);
    let adj = adjacency_from_edges(3, &edges);
    let scores = pagerank(&g, 0.85, 1e-12, 1000).unwrap();
    let oracle = pagerank_dense_oracle(&adj, 0.85);
    for (a, b) in scores.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-8, "{scores:?} vs {oracle:?}");
    }
}

#[test]
fn eigenvector_five_node_graph_matches_dense_oracle() {
    let edges = [(0, 1), (1, 2), (2, 0), (3, 2), (4, 2), (0, 4)];
    let g = graph_from_indices(5, &edges);
    let adj = adjacency_from_edges(5, &edges);
    let scores = eigenvector_centrality(&g, InfluenceDirection::Incoming, 1e-10, 10_000).unwrap();
    let oracle = eigenvector_dense_oracle(&adj, 200_000).unwrap();
    let cos = cosine_similarity(&scores, &oracle);
    assert!(cos > 1.0 - 1e-6, "cosine {cos}");
}

#[test]
fn betweenness_random_digraphs_match_enumeration_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEE5);
    for round in 0..40 {
        let n = 3 + (round % 6);
        let edges = random_digraph(n, 0.45, &mut rng);
        let g = graph_from_indices(n, &edges);
        let adj = adjacency_from_edges(n, &edges);
        let scores = betweenness_centrality(&g);
        let oracle = betweenness_oracle(&adj);
        for (i, (ours, exact)) in scores.raw.iter().zip(&oracle).enumerate() {
            assert!(
                (ours - exact).abs() <= 1e-12,
                "round {round} node {i}: {ours} vs {exact}"
            );
        }
    }
}

#[test]
fn pagerank_and_eigenvector_are_permutation_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let n = 7;
    let edges = random_digraph(n, 0.5, &mut rng);

    // Original labelling n00..n06, relabelled in reverse z06..z00.
    let g = graph_from_indices(n, &edges);
    let relabel: Vec<AccountId> = (0..n)
        .map(|i| AccountId::new(format!("z{:02}", n - 1 - i)))
        .collect();
    let relabelled_edges: Vec<FollowEdge> = edges
        .iter()
        .map(|&(a, b)| FollowEdge {
            follower_id: relabel[a].clone(),
            followee_id: relabel[b].clone(),
        })
        .collect();
    let filter: BTreeSet<AccountId> = relabel.iter().cloned().collect();
    let g2 = build_graph(&relabelled_edges, &filter).unwrap();

    let pr1 = pagerank(&g, 0.85, 1e-12, 1000).unwrap();
    let pr2 = pagerank(&g2, 0.85, 1e-12, 1000).unwrap();
    let ev1 = eigenvector_centrality(&g, InfluenceDirection::Incoming, 1e-10, 10_000).unwrap();
    let ev2 = eigenvector_centrality(&g2, InfluenceDirection::Incoming, 1e-10, 10_000).unwrap();

    for i in 0..n {
        let j = g2.index_of(&relabel[i]).unwrap();
        assert!((pr1[i] - pr2[j]).abs() < 1e-8, "pagerank node {i}");
        assert!((ev1[i] - ev2[j]).abs() < 1e-6, "eigenvector node {i}");
    }
}

#[test]
fn pagerank_sums_to_one_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC);
    for round in 0..30 {
        let n = 2 + (round % 7);
        let edges = random_digraph(n, 0.3, &mut rng);
        let g = graph_from_indices(n, &edges);
        let scores = pagerank(&g, 0.85, 1e-12, 2000).unwrap();
        let sum: f64 = scores.iter().sum();
        assert!((sum - 1.0).abs() < 1e-6, "round {round}: sum {sum}");
        assert!(scores.iter().all(|&s| s > 0.0));
    }
}
