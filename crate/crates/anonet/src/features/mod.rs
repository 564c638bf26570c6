//! The fixed 62-dimension numeric representation of an account profile.
//!
//! Features are derived only from the account information; tweets are never
//! consulted. The schema is the single source of truth for vector ordering:
//! extraction walks the schema entry by entry, so reordering schema entries
//! permutes the output identically.
//!
//! Layout of the standard schema (62 entries):
//!
//! - 25 collective-affiliation features: five keyword-usage booleans for
//!   each of username/screen-name/description (15), motto-in-description
//!   (1), hacker-terms per field (3), l33t per field (3), inner-caps per
//!   field (3);
//! - 9 profile features: tweet/follower/friend/favourites/listed counters,
//!   follower-friend ratio, location-provided, is-protected, URL-provided;
//! - 28 content features: characters/words/uppercase/lowercase/alphabetic/
//!   numeric/punctuation per field (21), emoji for screen-name and
//!   description (2; platform usernames cannot contain emoji), mentions,
//!   hashtags and URL in the description (3), Flesch-Kincaid and compound
//!   sentiment of the description (2).

mod readability;
mod sentiment;
mod text;

pub use readability::{count_syllables, flesch_kincaid};
pub use sentiment::{sentiment_compound, SentimentError, SentimentLexicon};
pub use text::{
    contains_url, count_alphabetic, count_chars, count_emoji, count_hashtags, count_lowercase,
    count_mentions, count_numeric, count_punctuation, count_uppercase, count_words,
    detect_inner_caps, detect_l33t,
};

use serde::{Deserialize, Serialize};

use crate::ingest::AccountProfile;
use crate::lexicon::{contains_hacker_term, contains_motto, fold, KeywordTable};

/// Number of features in the standard schema.
pub const FEATURE_COUNT: usize = 62;

/// Version tag carried by every extracted vector.
pub const SCHEMA_VERSION: u32 = 1;

/// The five keyword-usage families checked per text field. Variant lists
/// follow the keyword table's l33t spellings; the "ops" family is a
/// reconstruction and is visible here for audit.
#[rustfmt::skip]
pub const KEYWORD_GROUPS: [(&str, &[&str]); 5] = [
    ("anonymous", &[
        "anonymous", "an0nym0u5", "anonymou5", "an0nymous",
        "anonym0us", "anonym0u5", "an0nymou5", "an0nym0us",
    ]),
    ("anon", &["anon", "an0n"]),
    ("anony", &["anony", "an0ny"]),
    ("legion", &[
        "legion", "l3gion", "legi0n", "le3gi0n",
        "leg1on", "l3g1on", "leg10n", "l3g10n",
    ]),
    ("ops", &["ops", "0ps", "op5"]),
];

/// Which part of the profile a feature reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceField {
    Username,
    ScreenName,
    Description,
    Profile,
}

/// Value family of a feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureKind {
    Boolean,
    Count,
    Ratio,
    Score,
}

/// Text fields a per-field feature can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextField {
    Username,
    ScreenName,
    Description,
}

impl TextField {
    const ALL: [TextField; 3] = [
        TextField::Username,
        TextField::ScreenName,
        TextField::Description,
    ];

    fn suffix(self) -> &'static str {
        match self {
            TextField::Username => "username",
            TextField::ScreenName => "screen_name",
            TextField::Description => "description",
        }
    }

    fn source(self) -> SourceField {
        match self {
            TextField::Username => SourceField::Username,
            TextField::ScreenName => SourceField::ScreenName,
            TextField::Description => SourceField::Description,
        }
    }

    fn get(self, profile: &AccountProfile) -> &str {
        match self {
            TextField::Username => &profile.username,
            TextField::ScreenName => &profile.screen_name,
            TextField::Description => &profile.description,
        }
    }
}

/// How a single feature is computed. Extraction dispatches on this, so a
/// schema permutation permutes the extracted values identically.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Computation {
    KeywordGroup(usize, TextField),
    MottoInDescription,
    HackerTerms(TextField),
    Leet(TextField),
    InnerCaps(TextField),
    TweetCount,
    FollowerCount,
    FriendCount,
    FollowerFriendRatio,
    FavouritesCount,
    ListedCount,
    LocationProvided,
    IsProtected,
    UrlProvided,
    Chars(TextField),
    Words(TextField),
    Uppercase(TextField),
    Lowercase(TextField),
    Alphabetic(TextField),
    Numeric(TextField),
    Punctuation(TextField),
    Emoji(TextField),
    MentionsInDescription,
    HashtagsInDescription,
    UrlInDescription,
    FleschKincaidDescription,
    SentimentDescription,
}

/// One schema entry: name, source field, value kind, and computation.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureDef {
    pub name: String,
    pub field: SourceField,
    pub kind: FeatureKind,
    computation: Computation,
}

/// Ordered list of feature definitions; the single source of truth for
/// vector ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSchema {
    defs: Vec<FeatureDef>,
}

impl FeatureSchema {
    /// The standard 62-feature schema.
    pub fn standard() -> Self {
        let mut defs = Vec::with_capacity(FEATURE_COUNT);
        let bool_kind = FeatureKind::Boolean;
        let count = FeatureKind::Count;

        for (gi, (group, _)) in KEYWORD_GROUPS.iter().enumerate() {
            for field in TextField::ALL {
                defs.push(FeatureDef {
                    name: format!("kw_{group}_{}", field.suffix()),
                    field: field.source(),
                    kind: bool_kind,
                    computation: Computation::KeywordGroup(gi, field),
                });
            }
        }
        defs.push(FeatureDef {
            name: "motto_description".into(),
            field: SourceField::Description,
            kind: bool_kind,
            computation: Computation::MottoInDescription,
        });
        for (label, make) in [
            (
                "hacker_terms",
                Computation::HackerTerms as fn(TextField) -> Computation,
            ),
            ("l33t", Computation::Leet as fn(TextField) -> Computation),
            (
                "inner_caps",
                Computation::InnerCaps as fn(TextField) -> Computation,
            ),
        ] {
            for field in TextField::ALL {
                defs.push(FeatureDef {
                    name: format!("{label}_{}", field.suffix()),
                    field: field.source(),
                    kind: bool_kind,
                    computation: make(field),
                });
            }
        }

        let profile_defs: [(&str, FeatureKind, Computation); 9] = [
            ("tweet_count", count, Computation::TweetCount),
            ("follower_count", count, Computation::FollowerCount),
            ("friend_count", count, Computation::FriendCount),
            (
                "follower_friend_ratio",
                FeatureKind::Ratio,
                Computation::FollowerFriendRatio,
            ),
            ("favourites_count", count, Computation::FavouritesCount),
            ("listed_count", count, Computation::ListedCount),
            (
                "location_provided",
                bool_kind,
                Computation::LocationProvided,
            ),
            ("is_protected", bool_kind, Computation::IsProtected),
            ("url_provided", bool_kind, Computation::UrlProvided),
        ];
        for (name, kind, computation) in profile_defs {
            defs.push(FeatureDef {
                name: name.into(),
                field: SourceField::Profile,
                kind,
                computation,
            });
        }

        for (label, make) in [
            ("chars", Computation::Chars as fn(TextField) -> Computation),
            ("words", Computation::Words as fn(TextField) -> Computation),
            (
                "uppercase",
                Computation::Uppercase as fn(TextField) -> Computation,
            ),
            (
                "lowercase",
                Computation::Lowercase as fn(TextField) -> Computation,
            ),
            (
                "alphabetic",
                Computation::Alphabetic as fn(TextField) -> Computation,
            ),
            (
                "numeric",
                Computation::Numeric as fn(TextField) -> Computation,
            ),
            (
                "punctuation",
                Computation::Punctuation as fn(TextField) -> Computation,
            ),
        ] {
            for field in TextField::ALL {
                defs.push(FeatureDef {
                    name: format!("{label}_{}", field.suffix()),
                    field: field.source(),
                    kind: count,
                    computation: make(field),
                });
            }
        }
        for field in [TextField::ScreenName, TextField::Description] {
            defs.push(FeatureDef {
                name: format!("emoji_{}", field.suffix()),
                field: field.source(),
                kind: count,
                computation: Computation::Emoji(field),
            });
        }
        defs.push(FeatureDef {
            name: "mentions_description".into(),
            field: SourceField::Description,
            kind: count,
            computation: Computation::MentionsInDescription,
        });
        defs.push(FeatureDef {
            name: "hashtags_description".into(),
            field: SourceField::Description,
            kind: count,
            computation: Computation::HashtagsInDescription,
        });
        defs.push(FeatureDef {
            name: "url_description".into(),
            field: SourceField::Description,
            kind: bool_kind,
            computation: Computation::UrlInDescription,
        });
        defs.push(FeatureDef {
            name: "flesch_kincaid_description".into(),
            field: SourceField::Description,
            kind: FeatureKind::Score,
            computation: Computation::FleschKincaidDescription,
        });
        defs.push(FeatureDef {
            name: "sentiment_description".into(),
            field: SourceField::Description,
            kind: FeatureKind::Score,
            computation: Computation::SentimentDescription,
        });

        debug_assert_eq!(defs.len(), FEATURE_COUNT);
        FeatureSchema { defs }
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn defs(&self) -> &[FeatureDef] {
        &self.defs
    }

    /// Feature names in vector order, for audit dumps.
    pub fn names(&self) -> Vec<&str> {
        self.defs.iter().map(|d| d.name.as_str()).collect()
    }

    /// A schema with the same entries in a caller-chosen order. Intended for
    /// permutation checks.
    pub fn permuted(&self, order: &[usize]) -> FeatureSchema {
        FeatureSchema {
            defs: order.iter().map(|&i| self.defs[i].clone()).collect(),
        }
    }
}

impl Default for FeatureSchema {
    fn default() -> Self {
        FeatureSchema::standard()
    }
}

/// An extracted feature vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub schema_version: u32,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn bool_feature(hit: bool) -> f64 {
    if hit {
        1.0
    } else {
        0.0
    }
}

fn keyword_group_hit(group_index: usize, text: &str) -> bool {
    let folded = fold(text);
    KEYWORD_GROUPS[group_index]
        .1
        .iter()
        .any(|variant| folded.contains(variant))
}

/// Followers divided by friends, guarding the zero-friend case with
/// max(friends, 1).
pub fn follower_friend_ratio(followers: u64, friends: u64) -> f64 {
    followers as f64 / friends.max(1) as f64
}

fn compute(
    computation: Computation,
    profile: &AccountProfile,
    table: &KeywordTable,
    lexicon: &SentimentLexicon,
) -> f64 {
    use Computation::*;
    match computation {
        KeywordGroup(gi, field) => bool_feature(keyword_group_hit(gi, field.get(profile))),
        MottoInDescription => bool_feature(contains_motto(&profile.description, table)),
        HackerTerms(field) => bool_feature(contains_hacker_term(field.get(profile), table)),
        Leet(field) => bool_feature(detect_l33t(field.get(profile))),
        InnerCaps(field) => bool_feature(detect_inner_caps(field.get(profile))),
        TweetCount => profile.tweet_count as f64,
        FollowerCount => profile.follower_count as f64,
        FriendCount => profile.friend_count as f64,
        FollowerFriendRatio => follower_friend_ratio(profile.follower_count, profile.friend_count),
        FavouritesCount => profile.favourites_count as f64,
        ListedCount => profile.listed_count as f64,
        LocationProvided => bool_feature(profile.location_provided),
        IsProtected => bool_feature(profile.is_protected),
        UrlProvided => bool_feature(profile.url_provided),
        Chars(field) => count_chars(field.get(profile)) as f64,
        Words(field) => count_words(field.get(profile)) as f64,
        Uppercase(field) => count_uppercase(field.get(profile)) as f64,
        Lowercase(field) => count_lowercase(field.get(profile)) as f64,
        Alphabetic(field) => count_alphabetic(field.get(profile)) as f64,
        Numeric(field) => count_numeric(field.get(profile)) as f64,
        Punctuation(field) => count_punctuation(field.get(profile)) as f64,
        Emoji(field) => count_emoji(field.get(profile)) as f64,
        MentionsInDescription => count_mentions(&profile.description) as f64,
        HashtagsInDescription => count_hashtags(&profile.description) as f64,
        UrlInDescription => bool_feature(contains_url(&profile.description)),
        FleschKincaidDescription => flesch_kincaid(&profile.description),
        SentimentDescription => sentiment_compound(&profile.description, lexicon),
    }
}

/// Extract a profile's feature vector under an explicit schema.
pub fn extract_with_schema(
    schema: &FeatureSchema,
    profile: &AccountProfile,
    table: &KeywordTable,
    lexicon: &SentimentLexicon,
) -> FeatureVector {
    FeatureVector {
        values: schema
            .defs
            .iter()
            .map(|def| compute(def.computation, profile, table, lexicon))
            .collect(),
        schema_version: SCHEMA_VERSION,
    }
}

/// Extract the standard 62-feature vector. Pure: the same profile and
/// configuration always yield a bitwise-identical vector.
pub fn extract_features(
    profile: &AccountProfile,
    table: &KeywordTable,
    lexicon: &SentimentLexicon,
) -> FeatureVector {
    extract_with_schema(&FeatureSchema::standard(), profile, table, lexicon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn profile() -> AccountProfile {
        AccountProfile {
            account_id: "t".into(),
            username: String::new(),
            screen_name: String::new(),
            description: String::new(),
            tweet_count: 0,
            follower_count: 0,
            friend_count: 0,
            favourites_count: 0,
            listed_count: 0,
            location_provided: false,
            is_protected: false,
            url_provided: false,
            has_fawkes_image: false,
            has_businessman_image: false,
            created_at: NaiveDate::from_ymd_opt(2012, 1, 1).unwrap(),
            last_tweet_at: None,
        }
    }

    fn extract(p: &AccountProfile) -> FeatureVector {
        extract_features(p, &KeywordTable::default(), &SentimentLexicon::builtin())
    }

    #[test]
    fn vector_length_is_62() {
        assert_eq!(FeatureSchema::standard().len(), FEATURE_COUNT);
        assert_eq!(extract(&profile()).len(), FEATURE_COUNT);
    }

    #[test]
    fn schema_names_unique() {
        let schema = FeatureSchema::standard();
        let names = schema.names();
        let set: std::collections::HashSet<&&str> = names.iter().collect();
        assert_eq!(set.len(), FEATURE_COUNT);
    }

    #[test]
    fn empty_profile_extracts_zeros() {
        let v = extract(&profile());
        assert!(v.values.iter().all(|&x| x == 0.0), "{:?}", v.values);
    }

    #[test]
    fn mention_and_hashtag_features_count() {
        let mut p = profile();
        p.description = "Hi @a #b #c".to_string();
        let schema = FeatureSchema::standard();
        let v = extract(&p);
        let idx = |name: &str| schema.names().iter().position(|n| *n == name).unwrap();
        assert_eq!(v.values[idx("mentions_description")], 1.0);
        assert_eq!(v.values[idx("hashtags_description")], 2.0);
    }

    #[test]
    fn ratio_guard_cases() {
        assert_eq!(follower_friend_ratio(100, 50), 2.0);
        assert_eq!(follower_friend_ratio(0, 0), 0.0);
        assert_eq!(follower_friend_ratio(7, 0), 7.0);
    }

    #[test]
    fn extraction_is_pure() {
        let mut p = profile();
        p.username = "An0n_Warrior".into();
        p.description = "We are legion. NOT afraid. #ops @hq https://x.org".into();
        p.follower_count = 12;
        p.friend_count = 5;
        let a = extract(&p);
        let b = extract(&p);
        assert_eq!(a, b);
    }

    #[test]
    fn schema_permutation_permutes_values() {
        let mut p = profile();
        p.username = "anon_ops".into();
        p.screen_name = "YourAnonNews".into();
        p.description = "we are legion #anonymous".into();
        p.tweet_count = 7;
        p.follower_count = 3;

        let schema = FeatureSchema::standard();
        let order: Vec<usize> = (0..schema.len()).rev().collect();
        let permuted = schema.permuted(&order);

        let table = KeywordTable::default();
        let lex = SentimentLexicon::builtin();
        let base = extract_with_schema(&schema, &p, &table, &lex);
        let swapped = extract_with_schema(&permuted, &p, &table, &lex);
        for (new_pos, &old_pos) in order.iter().enumerate() {
            assert_eq!(swapped.values[new_pos], base.values[old_pos]);
        }
    }

    #[test]
    fn character_class_inequalities_hold() {
        let mut p = profile();
        p.username = "An0n_Warrior 99!".into();
        p.screen_name = "mixed CASE text".into();
        p.description = "Symbols \u{1F600} and MORE text 123...".into();
        let schema = FeatureSchema::standard();
        let v = extract(&p);
        let idx = |name: String| schema.names().iter().position(|n| *n == name).unwrap();
        for field in ["username", "screen_name", "description"] {
            let upper = v.values[idx(format!("uppercase_{field}"))];
            let lower = v.values[idx(format!("lowercase_{field}"))];
            let alpha = v.values[idx(format!("alphabetic_{field}"))];
            let chars = v.values[idx(format!("chars_{field}"))];
            assert!(upper + lower <= alpha, "{field}");
            assert!(alpha <= chars, "{field}");
        }
    }
}
