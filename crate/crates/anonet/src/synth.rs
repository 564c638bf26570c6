//! Synthetic data generators: separable account fixtures for classifier
//! evaluation and planted-topic corpora for LDA recovery checks.

use chrono::NaiveDate;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ingest::{AccountProfile, TweetRecord};

const POSITIVE_NAME_STEMS: [&str; 5] = [
    "anon_ops",
    "legi0n_rising",
    "an0n_watch",
    "anony_mouse",
    "l3g1on_hq",
];
const POSITIVE_DESCRIPTIONS: [&str; 4] = [
    "we are legion expect us #anonymous",
    "anonymous collective news and ops",
    "an0nymous press channel, leaks daily",
    "official legi0n stream - we do not forget",
];
// Negative text deliberately avoids every keyword substring (no "anon",
// "legion" variants, no "ops").
const NEGATIVE_NAME_STEMS: [&str; 5] = [
    "coffee_fan",
    "daily_runner",
    "photo_diary",
    "quiet_reader",
    "garden_life",
];
const NEGATIVE_DESCRIPTIONS: [&str; 4] = [
    "espresso lover and weekend cyclist",
    "sharing photos of mountains and lakes",
    "book reviews, slow cooking, long walks",
    "",
];

/// Generate a separable labelled fixture: positives carry affiliation
/// keywords in both name and description plus an image flag; negatives
/// carry none of that. A quarter of the negatives still pass the name
/// filter (keyword in the name only), mirroring the candidate pool a name
/// filter produces.
pub fn synthetic_accounts(n_positive: usize, n_negative: usize, seed: u64) -> Vec<AccountProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n_positive + n_negative);
    for i in 0..n_positive {
        let stem = POSITIVE_NAME_STEMS[i % POSITIVE_NAME_STEMS.len()];
        let created = NaiveDate::from_ymd_opt(2011 + (i % 3) as i32, 1 + (i % 12) as u32, 1)
            .expect("valid date");
        out.push(AccountProfile {
            account_id: format!("synth_pos_{i:04}").as_str().into(),
            username: format!("{stem}_{i}"),
            screen_name: format!("The {stem} {i}"),
            description: format!(
                "{} / member {}",
                POSITIVE_DESCRIPTIONS[i % POSITIVE_DESCRIPTIONS.len()],
                i
            ),
            tweet_count: rng.random_range(500..20_000),
            follower_count: rng.random_range(200..50_000),
            friend_count: rng.random_range(50..2_000),
            favourites_count: rng.random_range(0..10_000),
            listed_count: rng.random_range(0..400),
            location_provided: rng.random_bool(0.3),
            is_protected: false,
            url_provided: rng.random_bool(0.5),
            has_fawkes_image: true,
            has_businessman_image: rng.random_bool(0.3),
            created_at: created,
            last_tweet_at: Some(
                NaiveDate::from_ymd_opt(2015 + (i % 5) as i32, 6, 1).expect("valid date"),
            ),
        });
    }
    for i in 0..n_negative {
        let keyword_name = i % 4 == 0;
        let stem = NEGATIVE_NAME_STEMS[i % NEGATIVE_NAME_STEMS.len()];
        let username = if keyword_name {
            format!("anon_{stem}_{i}")
        } else {
            format!("{stem}_{i}")
        };
        let created = NaiveDate::from_ymd_opt(2009 + (i % 10) as i32, 1 + (i % 12) as u32, 2)
            .expect("valid date");
        out.push(AccountProfile {
            account_id: format!("synth_neg_{i:04}").as_str().into(),
            username,
            screen_name: format!("{stem} {i}"),
            description: NEGATIVE_DESCRIPTIONS[i % NEGATIVE_DESCRIPTIONS.len()].to_string(),
            tweet_count: rng.random_range(0..20_000),
            follower_count: rng.random_range(0..50_000),
            friend_count: rng.random_range(0..2_000),
            favourites_count: rng.random_range(0..10_000),
            listed_count: rng.random_range(0..400),
            location_provided: rng.random_bool(0.5),
            is_protected: rng.random_bool(0.1),
            url_provided: rng.random_bool(0.5),
            has_fawkes_image: false,
            has_businessman_image: false,
            created_at: created,
            last_tweet_at: Some(
                NaiveDate::from_ymd_opt(2012 + (i % 8) as i32, 6, 2).expect("valid date"),
            ),
        });
    }
    out
}

/// A corpus with known topic structure.
#[derive(Debug, Clone)]
pub struct PlantedCorpus {
    pub tweets: Vec<TweetRecord>,
    /// Per-topic vocabulary in descending generation probability; the first
    /// ten entries of each row are that topic's planted top words.
    pub topic_words: Vec<Vec<String>>,
    pub k: usize,
}

/// Generate `docs` documents over `k` planted topics. Each document draws
/// `doc_len` tokens from its topic's geometrically decaying word
/// distribution; `shared_fraction` is the per-token probability of drawing
/// from a small shared pool instead (0.0 gives fully disjoint topics).
pub fn planted_topic_corpus(
    k: usize,
    docs: usize,
    words_per_topic: usize,
    doc_len: usize,
    shared_fraction: f64,
    seed: u64,
) -> PlantedCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let topic_words: Vec<Vec<String>> = (0..k)
        .map(|t| {
            (0..words_per_topic)
                .map(|j| format!("topic{t}word{j:02}"))
                .collect()
        })
        .collect();
    let shared: Vec<String> = (0..10).map(|j| format!("sharedword{j:02}")).collect();

    // Geometric decay over within-topic ranks.
    let decay = 0.85f64;
    let weights: Vec<f64> = (0..words_per_topic).map(|j| decay.powi(j as i32)).collect();
    let total: f64 = weights.iter().sum();
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w / total;
            Some(*acc)
        })
        .collect();

    let base = NaiveDate::from_ymd_opt(2019, 1, 1)
        .expect("valid date")
        .and_hms_opt(0, 0, 0)
        .expect("valid time");
    let tweets = (0..docs)
        .map(|d| {
            let topic = d % k;
            let words: Vec<&str> = (0..doc_len)
                .map(|_| {
                    if shared_fraction > 0.0 && rng.random_bool(shared_fraction) {
                        shared[rng.random_range(0..shared.len())].as_str()
                    } else {
                        let u: f64 = rng.random();
                        let rank = cumulative
                            .partition_point(|&c| c < u)
                            .min(words_per_topic - 1);
                        topic_words[topic][rank].as_str()
                    }
                })
                .collect();
            TweetRecord {
                account_id: "synthetic_corpus".into(),
                tweet_id: format!("t{d:05}"),
                created_at: base + chrono::Duration::minutes(d as i64),
                text: words.join(" "),
                is_retweet: false,
            }
        })
        .collect();
    PlantedCorpus {
        tweets,
        topic_words,
        k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{extract_features, SentimentLexicon};
    use crate::lexicon::{contains_anon_keyword, positive_label_rule, KeywordTable, Label};

    #[test]
    fn positives_label_positive_and_negatives_negative() {
        let table = KeywordTable::default();
        let accounts = synthetic_accounts(20, 30, 1);
        for p in &accounts {
            let expected = p.account_id.as_str().starts_with("synth_pos");
            let decision = positive_label_rule(p, &table);
            assert_eq!(
                decision.label == Label::Positive,
                expected,
                "{}",
                p.account_id
            );
        }
    }

    #[test]
    fn negative_descriptions_carry_no_keywords() {
        let table = KeywordTable::default();
        for p in synthetic_accounts(0, 40, 2) {
            assert!(
                !contains_anon_keyword(&p.description, &table),
                "{}",
                p.description
            );
        }
    }

    #[test]
    fn generated_profiles_extract_62_features() {
        let table = KeywordTable::default();
        let lex = SentimentLexicon::builtin();
        for p in synthetic_accounts(3, 3, 3) {
            assert_eq!(extract_features(&p, &table, &lex).len(), 62);
        }
    }

    #[test]
    fn planted_corpus_shape() {
        let corpus = planted_topic_corpus(5, 100, 30, 20, 0.05, 9);
        assert_eq!(corpus.tweets.len(), 100);
        assert_eq!(corpus.topic_words.len(), 5);
        assert!(corpus.tweets.iter().all(|t| !t.text.is_empty()));
        // Deterministic from seed.
        let again = planted_topic_corpus(5, 100, 30, 20, 0.05, 9);
        assert_eq!(
            corpus.tweets.iter().map(|t| &t.text).collect::<Vec<_>>(),
            again.tweets.iter().map(|t| &t.text).collect::<Vec<_>>()
        );
    }
}
