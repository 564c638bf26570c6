//! Latent Dirichlet allocation by collapsed Gibbs sampling.
//!
//! The sampler integrates out the multinomial parameters and resamples each
//! token's topic assignment from counts; phi and theta are estimated from
//! the final-state counts with smoothing. A fixed seed fully determines the
//! chain.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::preprocess::TokenizedCorpus;
use super::TopicsError;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LdaParams {
    pub iterations: usize,
    /// Document-topic smoothing; 0 selects the 50/K convention.
    pub alpha: f64,
    /// Topic-word smoothing.
    pub beta: f64,
}

impl Default for LdaParams {
    fn default() -> Self {
        LdaParams {
            iterations: 1000,
            alpha: 0.0,
            beta: 0.01,
        }
    }
}

/// Fitted LDA state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopicModel {
    pub k: usize,
    /// K x V topic-word distribution; rows sum to 1.
    pub phi: Vec<Vec<f64>>,
    /// D x K document-topic distribution; rows sum to 1.
    pub theta: Vec<Vec<f64>>,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub rng_seed: u64,
    /// Filled in by coherence scoring when available.
    pub coherence: Option<f64>,
}

impl TopicModel {
    /// The `n` highest-probability token ids for a topic, ties broken by
    /// ascending token id.
    pub fn top_words(&self, topic: usize, n: usize) -> Result<Vec<u32>, TopicsError> {
        if topic >= self.k {
            return Err(TopicsError::TopicOutOfRange { topic, k: self.k });
        }
        let row = &self.phi[topic];
        if n > row.len() {
            return Err(TopicsError::TopNExceedsVocabulary {
                top_n: n,
                vocab: row.len(),
            });
        }
        let mut order: Vec<u32> = (0..row.len() as u32).collect();
        order.sort_by(|&a, &b| {
            row[b as usize]
                .total_cmp(&row[a as usize])
                .then_with(|| a.cmp(&b))
        });
        order.truncate(n);
        Ok(order)
    }
}

/// Fit LDA with `k` topics over the corpus by collapsed Gibbs sampling.
pub fn lda_fit(
    corpus: &TokenizedCorpus,
    k: usize,
    params: &LdaParams,
    seed: u64,
) -> Result<TopicModel, TopicsError> {
    if corpus.docs.is_empty() {
        return Err(TopicsError::EmptyCorpus);
    }
    if k == 0 {
        return Err(TopicsError::InvalidTopicCount { k });
    }
    let total_tokens = corpus.token_count();
    if k > total_tokens {
        return Err(TopicsError::TopicCountExceedsTokens {
            k,
            tokens: total_tokens,
        });
    }
    let v = corpus.vocab_size();
    let d = corpus.docs.len();
    let alpha = if params.alpha > 0.0 {
        params.alpha
    } else {
        50.0 / k as f64
    };
    let beta = params.beta;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignments: Vec<Vec<usize>> = corpus
        .docs
        .iter()
        .map(|doc| doc.iter().map(|_| rng.random_range(0..k)).collect())
        .collect();

    let mut doc_topic = vec![vec![0usize; k]; d];
    let mut topic_word = vec![vec![0usize; v]; k];
    let mut topic_total = vec![0usize; k];
    for (di, doc) in corpus.docs.iter().enumerate() {
        for (&w, &z) in doc.iter().zip(&assignments[di]) {
            doc_topic[di][z] += 1;
            topic_word[z][w as usize] += 1;
            topic_total[z] += 1;
        }
    }

    let v_beta = v as f64 * beta;
    let mut weights = vec![0.0f64; k];
    for _sweep in 0..params.iterations {
        for (di, doc) in corpus.docs.iter().enumerate() {
            for (ti, &w) in doc.iter().enumerate() {
                let w = w as usize;
                let old = assignments[di][ti];
                doc_topic[di][old] -= 1;
                topic_word[old][w] -= 1;
                topic_total[old] -= 1;

                let mut cumulative = 0.0;
                for topic in 0..k {
                    let doc_part = doc_topic[di][topic] as f64 + alpha;
                    let word_part =
                        (topic_word[topic][w] as f64 + beta) / (topic_total[topic] as f64 + v_beta);
                    cumulative += doc_part * word_part;
                    weights[topic] = cumulative;
                }
                let draw: f64 = rng.random::<f64>() * cumulative;
                let new = weights.partition_point(|&c| c < draw).min(k - 1);

                assignments[di][ti] = new;
                doc_topic[di][new] += 1;
                topic_word[new][w] += 1;
                topic_total[new] += 1;
            }
        }
        debug_assert_eq!(
            topic_total.iter().sum::<usize>(),
            total_tokens,
            "topic count tables must account for every token"
        );
    }

    let phi = topic_word
        .iter()
        .enumerate()
        .map(|(topic, counts)| {
            let denom = topic_total[topic] as f64 + v_beta;
            counts
                .iter()
                .map(|&c| (c as f64 + beta) / denom)
                .collect::<Vec<f64>>()
        })
        .collect();
    let theta = doc_topic
        .iter()
        .enumerate()
        .map(|(di, counts)| {
            let denom = corpus.docs[di].len() as f64 + k as f64 * alpha;
            counts
                .iter()
                .map(|&c| (c as f64 + alpha) / denom)
                .collect::<Vec<f64>>()
        })
        .collect();

    Ok(TopicModel {
        k,
        phi,
        theta,
        alpha,
        beta,
        iterations: params.iterations,
        rng_seed: seed,
        coherence: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topics::preprocess::TokenizedCorpus;

    fn corpus(docs: Vec<Vec<u32>>, vocab: &[&str]) -> TokenizedCorpus {
        TokenizedCorpus {
            doc_tweet_ids: (0..docs.len()).map(|i| format!("t{i}")).collect(),
            docs,
            vocab: vocab.iter().map(|s| s.to_string()).collect(),
            dropped_empty: 0,
        }
    }

    fn params(iterations: usize) -> LdaParams {
        LdaParams {
            iterations,
            ..LdaParams::default()
        }
    }

    #[test]
    fn k1_phi_is_smoothed_unigram_distribution() {
        let c = corpus(
            vec![vec![0, 0, 1], vec![1, 2, 2, 2]],
            &["alpha", "beta", "gamma"],
        );
        let model = lda_fit(&c, 1, &params(10), 7).unwrap();
        // counts: alpha 2, beta 2, gamma 3; total 7; beta smoothing 0.01.
        let denom = 7.0 + 3.0 * 0.01;
        assert!((model.phi[0][0] - 2.01 / denom).abs() < 1e-12);
        assert!((model.phi[0][2] - 3.01 / denom).abs() < 1e-12);
        for row in &model.theta {
            assert_eq!(row, &vec![1.0]);
        }
    }

    #[test]
    fn rows_sum_to_one() {
        let c = corpus(
            vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![0, 2, 0, 2]],
            &["a0", "b1", "c2", "d3"],
        );
        let model = lda_fit(&c, 3, &params(50), 11).unwrap();
        for row in model.phi.iter().chain(model.theta.iter()) {
            let sum: f64 = row.iter().sum();
            assert!((sum - 1.0).abs() < 1e-9, "row sum {sum}");
            assert!(row.iter().all(|&p| p > 0.0));
        }
    }

    #[test]
    fn same_seed_same_model() {
        let c = corpus(
            vec![vec![0, 1, 2], vec![2, 1, 0], vec![0, 0, 2]],
            &["a", "b", "c"],
        );
        let m1 = lda_fit(&c, 2, &params(30), 5).unwrap();
        let m2 = lda_fit(&c, 2, &params(30), 5).unwrap();
        assert_eq!(m1.phi, m2.phi);
        assert_eq!(m1.theta, m2.theta);
    }

    #[test]
    fn error_cases() {
        let empty = corpus(vec![], &[]);
        assert!(matches!(
            lda_fit(&empty, 2, &params(5), 1),
            Err(TopicsError::EmptyCorpus)
        ));
        let tiny = corpus(vec![vec![0]], &["a"]);
        assert!(matches!(
            lda_fit(&tiny, 0, &params(5), 1),
            Err(TopicsError::InvalidTopicCount { .. })
        ));
        assert!(matches!(
            lda_fit(&tiny, 5, &params(5), 1),
            Err(TopicsError::TopicCountExceedsTokens { .. })
        ));
    }

    #[test]
    fn top_words_ordered_with_id_ties() {
        let c = corpus(vec![vec![0, 1, 1, 2, 2, 2]], &["a", "b", "c"]);
        let model = lda_fit(&c, 1, &params(5), 3).unwrap();
        assert_eq!(model.top_words(0, 3).unwrap(), vec![2, 1, 0]);
        assert!(matches!(
            model.top_words(1, 3),
            Err(TopicsError::TopicOutOfRange { .. })
        ));
        assert!(matches!(
            model.top_words(0, 4),
            Err(TopicsError::TopNExceedsVocabulary { .. })
        ));
    }
}
