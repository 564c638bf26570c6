//! Tweet preprocessing: lowercasing, Twitter-noise removal, contraction
//! expansion, stopword and short-token filtering, and corpus-level bigram
//! merging.
//!
//! Mentions are removed entirely (they name accounts); hashtags keep their
//! text without the `#`. Bigram merging joins frequent adjacent content-word
//! pairs into underscore tokens ("julian assange" -> "julian_assange") and
//! iterates to a fixpoint, which makes the whole pipeline idempotent:
//! re-preprocessing rendered output changes nothing.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::ingest::TweetRecord;

/// Default English stopword list, frozen for reproducibility.
#[rustfmt::skip]
pub const DEFAULT_STOPWORDS: &[&str] = &[
    "a", "about", "above", "after", "again", "against", "all", "am", "an",
    "and", "any", "are", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "cannot",
    "could", "did", "do", "does", "doing", "down", "during", "each", "few",
    "for", "from", "further", "had", "has", "have", "having", "he", "her",
    "here", "hers", "herself", "him", "himself", "his", "how", "i", "if",
    "in", "into", "is", "it", "its", "itself", "just", "me", "more",
    "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on",
    "once", "only", "or", "other", "our", "ours", "ourselves", "out",
    "over", "own", "same", "she", "should", "so", "some", "such", "than",
    "that", "the", "their", "theirs", "them", "themselves", "then",
    "there", "these", "they", "this", "those", "through", "to", "too",
    "under", "until", "up", "very", "was", "we", "were", "what", "when",
    "where", "which", "while", "who", "whom", "why", "will", "with",
    "would", "you", "your", "yours", "yourself", "yourselves",
];

/// Default contraction table, applied token-wise before filtering.
#[rustfmt::skip]
pub const DEFAULT_CONTRACTIONS: &[(&str, &str)] = &[
    ("ain't", "is not"), ("aren't", "are not"), ("can't", "can not"),
    ("couldn't", "could not"), ("didn't", "did not"),
    ("doesn't", "does not"), ("don't", "do not"), ("hadn't", "had not"),
    ("hasn't", "has not"), ("haven't", "have not"), ("he'd", "he would"),
    ("he'll", "he will"), ("he's", "he is"), ("i'd", "i would"),
    ("i'll", "i will"), ("i'm", "i am"), ("i've", "i have"),
    ("isn't", "is not"), ("it'd", "it would"), ("it'll", "it will"),
    ("it's", "it is"), ("let's", "let us"), ("mustn't", "must not"),
    ("shan't", "shall not"), ("she'd", "she would"),
    ("she'll", "she will"), ("she's", "she is"),
    ("shouldn't", "should not"), ("that's", "that is"),
    ("there's", "there is"), ("they'd", "they would"),
    ("they'll", "they will"), ("they're", "they are"),
    ("they've", "they have"), ("wasn't", "was not"), ("we'd", "we would"),
    ("we'll", "we will"), ("we're", "we are"), ("we've", "we have"),
    ("weren't", "were not"), ("what's", "what is"), ("who's", "who is"),
    ("won't", "will not"), ("wouldn't", "would not"),
    ("you'd", "you would"), ("you'll", "you will"), ("you're", "you are"),
    ("you've", "you have"),
];

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PreprocessConfig {
    pub min_token_len: usize,
    pub bigram_min_count: usize,
    pub bigram_min_pmi: f64,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            min_token_len: 2,
            bigram_min_count: 10,
            bigram_min_pmi: 3.0,
        }
    }
}

pub fn default_stopwords() -> HashSet<String> {
    DEFAULT_STOPWORDS.iter().map(|s| s.to_string()).collect()
}

pub fn default_contractions() -> HashMap<String, String> {
    DEFAULT_CONTRACTIONS
        .iter()
        .map(|&(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

/// Tokenized corpus: one document per surviving tweet, ids into a shared
/// vocabulary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TokenizedCorpus {
    pub docs: Vec<Vec<u32>>,
    pub vocab: Vec<String>,
    /// Source tweet id per document, aligned with `docs`.
    pub doc_tweet_ids: Vec<String>,
    /// Tweets whose documents came out empty and were dropped.
    pub dropped_empty: usize,
}

impl TokenizedCorpus {
    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    pub fn token_count(&self) -> usize {
        self.docs.iter().map(|d| d.len()).sum()
    }

    pub fn token(&self, id: u32) -> &str {
        &self.vocab[id as usize]
    }

    /// Render each document back to text (tokens joined by single spaces).
    pub fn render(&self) -> Vec<String> {
        self.docs
            .iter()
            .map(|doc| {
                doc.iter()
                    .map(|&t| self.token(t))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Tokenize one tweet's text into filtered content words (no bigram stage).
fn tokenize_text(
    text: &str,
    stopwords: &HashSet<String>,
    contractions: &HashMap<String, String>,
    min_token_len: usize,
) -> Vec<String> {
    let mut out = Vec::new();
    for raw in text.to_lowercase().split_whitespace() {
        if raw.starts_with("http://") || raw.starts_with("https://") || raw.starts_with("www.") {
            continue;
        }
        let trimmed =
            raw.trim_matches(|c: char| !is_word_char(c) && c != '\'' && c != '@' && c != '#');
        if trimmed.starts_with('@') {
            continue;
        }
        let trimmed = trimmed.strip_prefix('#').unwrap_or(trimmed);
        let bare = trimmed.trim_matches(|c: char| !is_word_char(c) && c != '\'');
        if bare == "rt" {
            continue;
        }
        let expanded = match contractions.get(bare) {
            Some(expansion) => expansion.clone(),
            None => bare.replace('\'', ""),
        };
        for piece in expanded.split(|c: char| !is_word_char(c)) {
            if piece.chars().count() < min_token_len {
                continue;
            }
            if !piece.chars().any(|c| c.is_alphabetic()) {
                continue;
            }
            if piece == "rt" || stopwords.contains(piece) {
                continue;
            }
            out.push(piece.to_string());
        }
    }
    out
}

/// One pass of bigram merging over string documents. Only plain
/// (underscore-free) adjacent pairs are candidates; a pair merges when it
/// occurs at least `min_count` times and its PMI exceeds `min_pmi`.
/// Returns true when anything merged.
fn merge_bigrams_once(docs: &mut [Vec<String>], min_count: usize, min_pmi: f64) -> bool {
    let mut unigrams: HashMap<&str, usize> = HashMap::new();
    let mut pairs: HashMap<(&str, &str), usize> = HashMap::new();
    let mut total_tokens = 0usize;
    let mut total_pairs = 0usize;
    for doc in docs.iter() {
        total_tokens += doc.len();
        for t in doc {
            *unigrams.entry(t.as_str()).or_insert(0) += 1;
        }
        for w in doc.windows(2) {
            if w[0].contains('_') || w[1].contains('_') {
                continue;
            }
            total_pairs += 1;
            *pairs.entry((w[0].as_str(), w[1].as_str())).or_insert(0) += 1;
        }
    }
    if total_pairs == 0 || total_tokens == 0 {
        return false;
    }
    let mut eligible: HashSet<(String, String)> = HashSet::new();
    for (&(a, b), &count) in &pairs {
        if count < min_count {
            continue;
        }
        let p_pair = count as f64 / total_pairs as f64;
        let p_a = unigrams[a] as f64 / total_tokens as f64;
        let p_b = unigrams[b] as f64 / total_tokens as f64;
        let pmi = (p_pair / (p_a * p_b)).ln();
        if pmi > min_pmi {
            eligible.insert((a.to_string(), b.to_string()));
        }
    }
    if eligible.is_empty() {
        return false;
    }
    let mut merged_any = false;
    for doc in docs.iter_mut() {
        let mut merged = Vec::with_capacity(doc.len());
        let mut i = 0;
        while i < doc.len() {
            if i + 1 < doc.len()
                && !doc[i].contains('_')
                && !doc[i + 1].contains('_')
                && eligible.contains(&(doc[i].clone(), doc[i + 1].clone()))
            {
                merged.push(format!("{}_{}", doc[i], doc[i + 1]));
                merged_any = true;
                i += 2;
            } else {
                merged.push(doc[i].clone());
                i += 1;
            }
        }
        *doc = merged;
    }
    merged_any
}

/// Preprocess a tweet list into a tokenized corpus, one document per tweet.
/// Empty documents are dropped and counted.
pub fn preprocess(
    tweets: &[TweetRecord],
    stopwords: &HashSet<String>,
    contractions: &HashMap<String, String>,
    config: &PreprocessConfig,
) -> TokenizedCorpus {
    let mut docs: Vec<Vec<String>> = Vec::with_capacity(tweets.len());
    let mut tweet_ids = Vec::with_capacity(tweets.len());
    for tweet in tweets {
        docs.push(tokenize_text(
            &tweet.text,
            stopwords,
            contractions,
            config.min_token_len,
        ));
        tweet_ids.push(tweet.tweet_id.clone());
    }

    // Merge to fixpoint so re-preprocessing the rendered corpus is a no-op.
    while merge_bigrams_once(&mut docs, config.bigram_min_count, config.bigram_min_pmi) {}

    let mut vocab: Vec<String> = Vec::new();
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut out_docs = Vec::new();
    let mut out_tweet_ids = Vec::new();
    let mut dropped = 0usize;
    for (doc, tweet_id) in docs.into_iter().zip(tweet_ids) {
        if doc.is_empty() {
            dropped += 1;
            continue;
        }
        let doc_ids = doc
            .into_iter()
            .map(|token| {
                *ids.entry(token.clone()).or_insert_with(|| {
                    vocab.push(token);
                    (vocab.len() - 1) as u32
                })
            })
            .collect();
        out_docs.push(doc_ids);
        out_tweet_ids.push(tweet_id);
    }
    TokenizedCorpus {
        docs: out_docs,
        vocab,
        doc_tweet_ids: out_tweet_ids,
        dropped_empty: dropped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn tweet(id: &str, text: &str) -> TweetRecord {
        TweetRecord {
            account_id: "acc".into(),
            tweet_id: id.to_string(),
            created_at: NaiveDate::from_ymd_opt(2019, 1, 1)
                .unwrap()
                .and_hms_opt(0, 0, 0)
                .unwrap(),
            text: text.to_string(),
            is_retweet: false,
        }
    }

    fn corpus_of(texts: &[&str], config: &PreprocessConfig) -> TokenizedCorpus {
        let tweets: Vec<TweetRecord> = texts
            .iter()
            .enumerate()
            .map(|(i, t)| tweet(&format!("t{i}"), t))
            .collect();
        preprocess(
            &tweets,
            &default_stopwords(),
            &default_contractions(),
            config,
        )
    }

    #[test]
    fn twitter_noise_stripped_to_empty_doc() {
        let mut stop = default_stopwords();
        stop.insert("check".to_string());
        let tweets = vec![tweet("t0", "RT @bob Check https://x.y NOW")];
        let corpus = preprocess(
            &tweets,
            &stop,
            &default_contractions(),
            &PreprocessConfig::default(),
        );
        assert_eq!(corpus.docs.len(), 0);
        assert_eq!(corpus.dropped_empty, 1);
    }

    #[test]
    fn contractions_expand_before_filtering() {
        let corpus = corpus_of(&["don't stop"], &PreprocessConfig::default());
        // "do" and "not" are stopwords in the default list; "stop" survives.
        assert_eq!(corpus.render(), vec!["stop"]);
    }

    #[test]
    fn hashtags_keep_text_mentions_removed() {
        let corpus = corpus_of(
            &["#resist says @someone loudly"],
            &PreprocessConfig::default(),
        );
        let rendered = corpus.render().join(" ");
        assert!(rendered.contains("resist"));
        assert!(!rendered.contains("someone"));
    }

    #[test]
    fn frequent_adjacent_pair_becomes_bigram_token() {
        // 50 adjacent co-occurrences inside a larger, varied corpus.
        let mut texts: Vec<String> = (0..50)
            .map(|i| format!("julian assange spoke item{i} today"))
            .collect();
        for i in 0..300 {
            texts.push(format!(
                "filler{i} words piece{i} fragment{i} note{i} extra{i}"
            ));
        }
        let refs: Vec<&str> = texts.iter().map(|s| s.as_str()).collect();
        let corpus = corpus_of(&refs, &PreprocessConfig::default());
        assert!(
            corpus.vocab.iter().any(|t| t == "julian_assange"),
            "expected julian_assange in vocabulary"
        );
    }

    #[test]
    fn preprocessing_is_idempotent() {
        let texts: Vec<String> = (0..40)
            .map(|i| {
                format!(
                    "RT @user{i} don't fear the war crime reports https://leaks.example #press item{i}",
                )
            })
            .collect();
        let refs: Vec<&str> = texts.iter().map(|s| s.as_str()).collect();
        let config = PreprocessConfig {
            bigram_min_count: 10,
            bigram_min_pmi: 1.0,
            ..PreprocessConfig::default()
        };
        let first = corpus_of(&refs, &config);
        let rendered = first.render();
        let rendered_refs: Vec<&str> = rendered.iter().map(|s| s.as_str()).collect();
        let second = corpus_of(&rendered_refs, &config);
        assert_eq!(first.render(), second.render());
    }

    #[test]
    fn short_and_numeric_tokens_dropped() {
        let corpus = corpus_of(&["x 42 ok article13 yes"], &PreprocessConfig::default());
        let rendered = corpus.render().join(" ");
        assert!(!rendered.contains('x'));
        assert!(!rendered.split_whitespace().any(|t| t == "42"));
        assert!(rendered.contains("article13"));
    }
}
