//! UCI topic coherence: mean pairwise PMI of each topic's top words, with
//! probabilities estimated from boolean sliding windows over the reference
//! corpus. The reference corpus here is the account's own tweet corpus.

use std::collections::{HashMap, HashSet};

use super::lda::TopicModel;
use super::preprocess::TokenizedCorpus;
use super::TopicsError;

#[derive(Debug, Clone, Copy)]
pub struct CoherenceParams {
    pub top_n: usize,
    pub window: usize,
    pub epsilon: f64,
}

impl Default for CoherenceParams {
    fn default() -> Self {
        CoherenceParams {
            top_n: 10,
            window: 10,
            epsilon: 1e-12,
        }
    }
}

/// Count, over all sliding windows, how many contain each tracked word and
/// each tracked pair. Documents shorter than the window contribute a single
/// window.
type WindowCounts = (HashMap<u32, usize>, HashMap<(u32, u32), usize>, usize);

fn window_counts(corpus: &TokenizedCorpus, tracked: &HashSet<u32>, window: usize) -> WindowCounts {
    let mut single: HashMap<u32, usize> = HashMap::new();
    let mut pair: HashMap<(u32, u32), usize> = HashMap::new();
    let mut total_windows = 0usize;
    let mut present: Vec<u32> = Vec::new();
    for doc in &corpus.docs {
        let window_count = doc.len().saturating_sub(window) + 1;
        for start in 0..window_count {
            total_windows += 1;
            let end = (start + window).min(doc.len());
            present.clear();
            present.extend(
                doc[start..end]
                    .iter()
                    .filter(|t| tracked.contains(t))
                    .copied(),
            );
            present.sort_unstable();
            present.dedup();
            for (i, &a) in present.iter().enumerate() {
                *single.entry(a).or_insert(0) += 1;
                for &b in &present[i + 1..] {
                    *pair.entry((a, b)).or_insert(0) += 1;
                }
            }
        }
    }
    (single, pair, total_windows)
}

/// Model-level UCI coherence: the average over topics of the mean pairwise
/// PMI log((P(wi,wj)+eps) / (P(wi)P(wj))) over each topic's `top_n` words.
pub fn uci_coherence(
    model: &TopicModel,
    corpus: &TokenizedCorpus,
    params: &CoherenceParams,
) -> Result<f64, TopicsError> {
    if corpus.docs.is_empty() {
        return Err(TopicsError::EmptyCorpus);
    }
    if params.top_n > corpus.vocab_size() {
        return Err(TopicsError::TopNExceedsVocabulary {
            top_n: params.top_n,
            vocab: corpus.vocab_size(),
        });
    }
    let per_topic_words: Vec<Vec<u32>> = (0..model.k)
        .map(|t| model.top_words(t, params.top_n))
        .collect::<Result<_, _>>()?;
    let tracked: HashSet<u32> = per_topic_words.iter().flatten().copied().collect();
    let (single, pair, total_windows) = window_counts(corpus, &tracked, params.window);
    let total = total_windows as f64;

    let mut topic_scores = Vec::with_capacity(model.k);
    for words in &per_topic_words {
        let mut pair_sum = 0.0;
        let mut pair_count = 0usize;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let (a, b) = if words[i] <= words[j] {
                    (words[i], words[j])
                } else {
                    (words[j], words[i])
                };
                let p_a = single.get(&a).copied().unwrap_or(0) as f64 / total;
                let p_b = single.get(&b).copied().unwrap_or(0) as f64 / total;
                let p_ab = pair.get(&(a, b)).copied().unwrap_or(0) as f64 / total;
                // Top words always occur in the corpus, so marginals are
                // positive; epsilon guards the joint only.
                pair_sum += ((p_ab + params.epsilon) / (p_a * p_b)).ln();
                pair_count += 1;
            }
        }
        topic_scores.push(if pair_count == 0 {
            0.0
        } else {
            pair_sum / pair_count as f64
        });
    }
    Ok(topic_scores.iter().sum::<f64>() / topic_scores.len() as f64)
}
