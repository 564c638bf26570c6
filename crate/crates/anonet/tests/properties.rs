//! Property tests for the labelling rules, feature invariants, and the
//! snapshot round-trip.

use anonet::features::{extract_features, flesch_kincaid, sentiment_compound, SentimentLexicon};
use anonet::ingest::{load_snapshots, write_snapshots, AccountProfile};
use anonet::lexicon::{name_filter, positive_label_rule, KeywordTable, Label};
use chrono::NaiveDate;
use proptest::prelude::*;

fn text_strategy() -> impl Strategy<Value = String> {
    // Mix plain words, keyword fragments, digits, and punctuation.
    proptest::collection::vec(
        prop_oneof![
            Just("anon".to_string()),
            Just("LEGION".to_string()),
            Just("an0nym0u5".to_string()),
            Just("coffee".to_string()),
            Just("Canonical".to_string()),
            Just("#ops".to_string()),
            Just("@friend".to_string()),
            Just("h4ck".to_string()),
            Just("42".to_string()),
            Just("we?!".to_string()),
            "[a-zA-Z0-9_]{0,12}",
        ],
        0..6,
    )
    .prop_map(|words| words.join(" "))
}

prop_compose! {
    fn profile_strategy()(
        username in text_strategy(),
        screen_name in text_strategy(),
        description in text_strategy(),
        tweet_count in 0u64..100_000,
        follower_count in 0u64..1_000_000,
        friend_count in 0u64..50_000,
        favourites_count in 0u64..100_000,
        listed_count in 0u64..5_000,
        flags in proptest::bits::u8::ANY,
    ) -> AccountProfile {
        AccountProfile {
            account_id: "prop".into(),
            username,
            screen_name,
            description,
            tweet_count,
            follower_count,
            friend_count,
            favourites_count,
            listed_count,
            location_provided: flags & 1 != 0,
            is_protected: flags & 2 != 0,
            url_provided: flags & 4 != 0,
            has_fawkes_image: flags & 8 != 0,
            has_businessman_image: flags & 16 != 0,
            created_at: NaiveDate::from_ymd_opt(2010, 1, 1).unwrap(),
            last_tweet_at: None,
        }
    }
}

proptest! {
    #[test]
    fn positive_label_implies_name_filter(profile in profile_strategy()) {
        let table = KeywordTable::default();
        let decision = positive_label_rule(&profile, &table);
        if decision.label == Label::Positive {
            prop_assert!(name_filter(&profile, &table));
        }
    }

    #[test]
    fn adding_a_keyword_never_flips_positive_to_negative(profile in profile_strategy()) {
        let base = KeywordTable::default();
        let mut extended_keywords = base.keywords.clone();
        extended_keywords.push("zzzextra".to_string());
        let extended = KeywordTable::new(
            extended_keywords,
            base.hacker_terms.clone(),
            base.motto_patterns.clone(),
        ).unwrap();
        let before = positive_label_rule(&profile, &base);
        let after = positive_label_rule(&profile, &extended);
        if before.label == Label::Positive {
            prop_assert_eq!(after.label, Label::Positive);
        }
    }

    #[test]
    fn label_decisions_are_case_insensitive(profile in profile_strategy()) {
        let table = KeywordTable::default();
        let mut upper = profile.clone();
        upper.username = profile.username.to_uppercase();
        upper.screen_name = profile.screen_name.to_uppercase();
        upper.description = profile.description.to_uppercase();
        prop_assert_eq!(
            positive_label_rule(&profile, &table).label,
            positive_label_rule(&upper, &table).label
        );
    }

    #[test]
    fn feature_vector_contract(profile in profile_strategy()) {
        let table = KeywordTable::default();
        let lexicon = SentimentLexicon::builtin();
        let v = extract_features(&profile, &table, &lexicon);
        prop_assert_eq!(v.len(), 62);
        // Sentiment is the final entry of the standard schema.
        let sentiment = v.values[61];
        prop_assert!((-1.0..=1.0).contains(&sentiment));
    }

    #[test]
    fn sentiment_compound_stays_inside_open_unit_interval(text in text_strategy()) {
        let c = sentiment_compound(&text, &SentimentLexicon::builtin());
        prop_assert!(c > -1.0 && c < 1.0);
    }

    #[test]
    fn flesch_kincaid_ignores_surrounding_whitespace(text in text_strategy()) {
        let padded = format!("  {text} \n");
        prop_assert_eq!(flesch_kincaid(&text), flesch_kincaid(&padded));
    }
}

#[test]
fn snapshot_write_load_roundtrip() {
    let profiles: Vec<AccountProfile> = (0..25)
        .map(|i| AccountProfile {
            account_id: format!("acct{i}").as_str().into(),
            username: format!("user {i} \u{1F600}"),
            screen_name: format!("Screen{i}"),
            description: if i % 3 == 0 {
                String::new()
            } else {
                format!("desc {i}")
            },
            tweet_count: i * 10,
            follower_count: i * 7,
            friend_count: i,
            favourites_count: 0,
            listed_count: 2,
            location_provided: i % 2 == 0,
            is_protected: false,
            url_provided: i % 5 == 0,
            has_fawkes_image: i % 4 == 0,
            has_businessman_image: false,
            created_at: NaiveDate::from_ymd_opt(2010 + (i % 9) as i32, 3, 4).unwrap(),
            last_tweet_at: (i % 2 == 0).then(|| NaiveDate::from_ymd_opt(2019, 8, 1).unwrap()),
        })
        .collect();
    let file = tempfile::NamedTempFile::new().unwrap();
    write_snapshots(file.path(), &profiles).unwrap();
    let reloaded = load_snapshots(file.path()).unwrap();
    assert_eq!(profiles, reloaded);
}
