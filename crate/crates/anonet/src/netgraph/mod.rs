//! Follower-graph construction, the four centrality measures, fused
//! influence ranking, snowball expansion, and temporal reports.

mod centrality;
mod graph;
mod snowball;
mod temporal;

pub use centrality::{
    betweenness_centrality, centrality_report, degree_centrality, eigenvector_centrality,
    fuse_and_rank, normalize_scores, pagerank, score_curve, BetweennessScores, CentralityEntry,
    CentralityOptions, CentralityReport, DegreeMode, FusedScore, InfluenceDirection,
};
pub use graph::{build_graph, top_k_subgraph, FollowGraph, Subgraph};
pub use snowball::{snowball_expand, SnowballError, SnowballRun};
pub use temporal::{temporal_report, TemporalReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NetgraphError {
    #[error("node filter is empty")]
    EmptyFilter,
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("{measure} did not converge after {iterations} iterations")]
    NonConvergence {
        measure: &'static str,
        iterations: usize,
    },
    #[error("score set length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("k = {k} is outside 1..={nodes}")]
    InvalidK { k: usize, nodes: usize },
}
