//! Keyword tables and the labelling rules that produce training data and
//! candidate filters.
//!
//! Matching is deliberately permissive: a keyword hits whenever it occurs as
//! a case-insensitive substring of the text after Unicode case mapping, so
//! "Canonical" matches the keyword "anon". False positives are expected and
//! removed downstream by the classifier. Hacker-term and motto lists ship
//! with defaults but are reconstructions, loadable from plain-text config
//! files (one entry per line, `#` comments).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{AccountId, AccountProfile};

/// The 20 default collective-affiliation keywords.
#[rustfmt::skip]
pub const DEFAULT_KEYWORDS: [&str; 20] = [
    "anonymous", "an0nym0u5", "anonymou5", "an0nymous", "anonym0us",
    "anonym0u5", "an0nymou5", "an0nym0us", "anony", "an0ny", "anon",
    "an0n", "legion", "l3gion", "legi0n", "le3gi0n", "leg1on", "l3g1on",
    "leg10n", "l3g10n",
];

/// Default hacker-culture terms. Reconstructed; override via config file.
#[rustfmt::skip]
pub const DEFAULT_HACKER_TERMS: [&str; 12] = [
    "hacker", "hacktivist", "hacktivism", "hack", "ddos", "dox", "exploit",
    "breach", "leak", "opsec", "infosec", "cyber",
];

/// Default motto phrases. Reconstructed; override via config file.
#[rustfmt::skip]
pub const DEFAULT_MOTTO_PATTERNS: [&str; 5] = [
    "we are legion", "we do not forgive", "we do not forget", "expect us",
    "we are anonymous",
];

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("entry {entry:?} is not lowercase")]
    NotLowercase { entry: String },
    #[error("empty entry at line {line}")]
    EmptyEntry { line: usize },
    #[error("duplicate entry {entry:?}")]
    Duplicate { entry: String },
    #[error("term list is empty")]
    EmptyList,
}

fn validate_entries(entries: Vec<String>) -> Result<Vec<String>, LexiconError> {
    if entries.is_empty() {
        return Err(LexiconError::EmptyList);
    }
    let mut seen = std::collections::HashSet::new();
    for e in &entries {
        if e.is_empty() {
            return Err(LexiconError::EmptyEntry { line: 0 });
        }
        if *e != e.to_lowercase() {
            return Err(LexiconError::NotLowercase { entry: e.clone() });
        }
        if !seen.insert(e.clone()) {
            return Err(LexiconError::Duplicate { entry: e.clone() });
        }
    }
    Ok(entries)
}

/// Parse a plain-text term list: one entry per line, `#` starts a comment,
/// blank lines skipped. Entries are lowercased on load.
pub fn parse_term_list(text: &str) -> Result<Vec<String>, LexiconError> {
    let entries: Vec<String> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_lowercase())
        .filter(|l| !l.is_empty())
        .collect();
    validate_entries(entries)
}

pub fn load_term_list(path: impl AsRef<Path>) -> Result<Vec<String>, LexiconError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LexiconError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_term_list(&text)
}

/// The keyword table driving candidate filtering and positive labelling.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeywordTable {
    pub keywords: Vec<String>,
    pub hacker_terms: Vec<String>,
    pub motto_patterns: Vec<String>,
}

impl Default for KeywordTable {
    fn default() -> Self {
        KeywordTable {
            keywords: DEFAULT_KEYWORDS.iter().map(|s| s.to_string()).collect(),
            hacker_terms: DEFAULT_HACKER_TERMS.iter().map(|s| s.to_string()).collect(),
            motto_patterns: DEFAULT_MOTTO_PATTERNS
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

impl KeywordTable {
    /// Build a table from explicit entry lists, validating that all entries
    /// are lowercase, non-empty, and unique.
    pub fn new(
        keywords: Vec<String>,
        hacker_terms: Vec<String>,
        motto_patterns: Vec<String>,
    ) -> Result<Self, LexiconError> {
        Ok(KeywordTable {
            keywords: validate_entries(keywords)?,
            hacker_terms: validate_entries(hacker_terms)?,
            motto_patterns: validate_entries(motto_patterns)?,
        })
    }
}

/// Case-fold text for matching. Unicode-aware lowercase mapping, not
/// ASCII-only, since account names are Unicode.
pub fn fold(text: &str) -> String {
    text.to_lowercase()
}

fn any_substring(text: &str, entries: &[String]) -> bool {
    if entries.is_empty() {
        return false;
    }
    let folded = fold(text);
    entries.iter().any(|k| folded.contains(k.as_str()))
}

/// True iff any table keyword occurs as a case-insensitive substring of the
/// text. Empty text never matches.
pub fn contains_anon_keyword(text: &str, table: &KeywordTable) -> bool {
    any_substring(text, &table.keywords)
}

pub fn contains_hacker_term(text: &str, table: &KeywordTable) -> bool {
    any_substring(text, &table.hacker_terms)
}

pub fn contains_motto(text: &str, table: &KeywordTable) -> bool {
    any_substring(text, &table.motto_patterns)
}

/// Candidate filter: keyword in the username or the screen-name.
pub fn name_filter(profile: &AccountProfile, table: &KeywordTable) -> bool {
    contains_anon_keyword(&profile.username, table)
        || contains_anon_keyword(&profile.screen_name, table)
}

/// Outcome classes for labelling and filtering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Positive,
    Negative,
    Candidate,
    Excluded,
}

/// A labelling outcome with the names of the rules that fired.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelDecision {
    pub account_id: AccountId,
    pub label: Label,
    pub rule_trace: Vec<String>,
}

/// Positive-account rule: keyword in username or screen-name, AND keyword in
/// the description, AND a mask or businessman profile/background image.
/// All three clauses must fire for a positive label.
pub fn positive_label_rule(profile: &AccountProfile, table: &KeywordTable) -> LabelDecision {
    let mut trace = Vec::new();
    let name_hit = name_filter(profile, table);
    if name_hit {
        trace.push("name_keyword".to_string());
    }
    let description_hit = contains_anon_keyword(&profile.description, table);
    if description_hit {
        trace.push("description_keyword".to_string());
    }
    let image_hit = profile.has_fawkes_image || profile.has_businessman_image;
    if image_hit {
        trace.push("image_flag".to_string());
    }
    let label = if name_hit && description_hit && image_hit {
        Label::Positive
    } else {
        Label::Negative
    };
    LabelDecision {
        account_id: profile.account_id.clone(),
        label,
        rule_trace: trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn profile(
        username: &str,
        screen_name: &str,
        description: &str,
        fawkes: bool,
    ) -> AccountProfile {
        AccountProfile {
            account_id: "t1".into(),
            username: username.to_owned(),
            screen_name: screen_name.to_owned(),
            description: description.to_owned(),
            tweet_count: 0,
            follower_count: 0,
            friend_count: 0,
            favourites_count: 0,
            listed_count: 0,
            location_provided: false,
            is_protected: false,
            url_provided: false,
            has_fawkes_image: fawkes,
            has_businessman_image: false,
            created_at: NaiveDate::from_ymd_opt(2012, 1, 1).unwrap(),
            last_tweet_at: None,
        }
    }

    #[test]
    fn default_table_has_20_unique_keywords() {
        let t = KeywordTable::default();
        assert_eq!(t.keywords.len(), 20);
        let set: std::collections::HashSet<&String> = t.keywords.iter().collect();
        assert_eq!(set.len(), 20);
    }

    #[test]
    fn leet_variant_matches_case_insensitively() {
        let t = KeywordTable::default();
        assert!(contains_anon_keyword("An0nYm0u5_Hacker", &t));
    }

    #[test]
    fn empty_text_never_matches() {
        let t = KeywordTable::default();
        assert!(!contains_anon_keyword("", &t));
    }

    #[test]
    fn permissive_substring_policy() {
        // "Canonical" contains "anon"; false positives are removed downstream.
        let t = KeywordTable::default();
        assert!(contains_anon_keyword("Canonical", &t));
    }

    #[test]
    fn name_filter_checks_both_name_fields() {
        let t = KeywordTable::default();
        assert!(name_filter(&profile("legi0n_rising", "bob", "", false), &t));
        assert!(name_filter(&profile("bob", "We are l3g1on", "", false), &t));
        assert!(!name_filter(&profile("bob", "alice", "", false), &t));
    }

    #[test]
    fn positive_requires_all_three_clauses() {
        let t = KeywordTable::default();
        let d = positive_label_rule(&profile("anon_ops", "x", "we are legion", true), &t);
        assert_eq!(d.label, Label::Positive);
        assert_eq!(d.rule_trace.len(), 3);

        let d = positive_label_rule(&profile("anon_ops", "x", "we are legion", false), &t);
        assert_eq!(d.label, Label::Negative);

        let d = positive_label_rule(&profile("bob", "x", "anonymous fan", true), &t);
        assert_eq!(d.label, Label::Negative);
        assert!(!d.rule_trace.contains(&"name_keyword".to_string()));
    }

    #[test]
    fn term_list_parsing_skips_comments_and_blanks() {
        let list = parse_term_list("alpha\n# comment\n\nBeta # trailing\n").unwrap();
        assert_eq!(list, vec!["alpha", "beta"]);
    }

    #[test]
    fn term_list_rejects_duplicates() {
        assert!(matches!(
            parse_term_list("a\na\n"),
            Err(LexiconError::Duplicate { .. })
        ));
    }
}
