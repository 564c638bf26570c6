//! Toolkit for identifying members of a self-branded online collective from
//! account-profile snapshots, mapping influence over the resulting follower
//! graph, and characterising top influencers' tweet content.
//!
//! The pipeline stages live in their own modules:
//!
//! - [`ingest`] — snapshot/edge/tweet file loading and pseudonymization
//! - [`lexicon`] — keyword tables and the candidate/positive labelling rules
//! - [`features`] — the fixed 62-dimension profile feature vector
//! - [`classifier`] — decision trees and random forests over feature vectors
//! - [`netgraph`] — follower graph, centrality measures, snowball expansion
//! - [`topics`] — tweet preprocessing, LDA, coherence-driven topic sweeps
//! - [`synth`] — synthetic data generators used by tests and benchmarks

pub mod classifier;
pub mod features;
pub mod ingest;
pub mod lexicon;
pub mod netgraph;
pub mod synth;
pub mod topics;

pub use ingest::{AccountId, AccountProfile, FollowEdge, Pseudonym, Pseudonymizer, TweetRecord};
