//! Tweet-corpus preprocessing, LDA topic modelling with collapsed Gibbs
//! sampling, UCI coherence scoring, and the topic-number sweep.

mod coherence;
mod lda;
mod preprocess;
mod sweep;

pub use coherence::{uci_coherence, CoherenceParams};
pub use lda::{lda_fit, LdaParams, TopicModel};
pub use preprocess::{
    default_contractions, default_stopwords, preprocess, PreprocessConfig, TokenizedCorpus,
    DEFAULT_CONTRACTIONS, DEFAULT_STOPWORDS,
};
pub use sweep::{default_grid, grid, sweep_topic_numbers, SweepPoint, SweepResult};

use chrono::NaiveDateTime;
use thiserror::Error;

use crate::ingest::TweetRecord;

#[derive(Debug, Error)]
pub enum TopicsError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("topic count {k} is invalid (must be >= 1)")]
    InvalidTopicCount { k: usize },
    #[error("topic count {k} exceeds total token count {tokens}")]
    TopicCountExceedsTokens { k: usize, tokens: usize },
    #[error("topic {topic} out of range for a {k}-topic model")]
    TopicOutOfRange { topic: usize, k: usize },
    #[error("top_n {top_n} exceeds vocabulary size {vocab}")]
    TopNExceedsVocabulary { top_n: usize, vocab: usize },
    #[error("sweep grid is empty")]
    EmptyGrid,
    #[error("sweep grid must be strictly increasing")]
    GridNotIncreasing,
    #[error("sweep needs at least one seed per grid point")]
    NoSeeds,
}

/// The `limit` most recent tweets, newest first. Equal timestamps break by
/// ascending tweet id so the cut is deterministic.
pub fn select_recent(tweets: &[TweetRecord], limit: usize) -> Vec<TweetRecord> {
    let mut sorted: Vec<TweetRecord> = tweets.to_vec();
    sorted.sort_by(|a, b| {
        b.created_at
            .cmp(&a.created_at)
            .then_with(|| a.tweet_id.cmp(&b.tweet_id))
    });
    sorted.truncate(limit);
    sorted
}

/// Earliest and latest timestamps covered by a tweet selection.
pub fn covered_span(tweets: &[TweetRecord]) -> Option<(NaiveDateTime, NaiveDateTime)> {
    let min = tweets.iter().map(|t| t.created_at).min()?;
    let max = tweets.iter().map(|t| t.created_at).max()?;
    Some((min, max))
}
