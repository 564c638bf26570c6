//! Loading, validation, and pseudonymization of account snapshots, follow
//! edges, and tweet archives.
//!
//! All three input files are line-oriented so they stream and diff cleanly:
//! snapshots and tweets are JSON Lines (one object per line, named fields),
//! edges are two-column delimited text. The exact grammar is documented in
//! `docs/formats.md` at the repository root.
//!
//! Loaded collections are immutable; loading itself is single-threaded per
//! file.

mod pseudonym;
mod source;

pub use pseudonym::{Pseudonym, Pseudonymizer};
pub use source::{AccountSource, SnapshotSource, SourceError};

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use chrono::{NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Raw (un-pseudonymized) account identifier as it appears in input files.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AccountId(pub String);

impl AccountId {
    pub fn new(id: impl Into<String>) -> Self {
        AccountId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AccountId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AccountId {
    fn from(s: &str) -> Self {
        AccountId(s.to_owned())
    }
}

/// One account snapshot: names, description, counters, flags, dates.
///
/// The two image flags carry a labelling criterion that was applied manually
/// upstream; they arrive as booleans in the input data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccountProfile {
    pub account_id: AccountId,
    pub username: String,
    pub screen_name: String,
    #[serde(default)]
    pub description: String,
    pub tweet_count: u64,
    pub follower_count: u64,
    pub friend_count: u64,
    pub favourites_count: u64,
    pub listed_count: u64,
    pub location_provided: bool,
    pub is_protected: bool,
    pub url_provided: bool,
    pub has_fawkes_image: bool,
    pub has_businessman_image: bool,
    pub created_at: NaiveDate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_tweet_at: Option<NaiveDate>,
}

/// Directed follower relationship: `follower_id` follows `followee_id`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FollowEdge {
    pub follower_id: AccountId,
    pub followee_id: AccountId,
}

/// One archived tweet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub account_id: AccountId,
    pub tweet_id: String,
    pub created_at: NaiveDateTime,
    pub text: String,
    pub is_retweet: bool,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("failed to open {path}: {source}")]
    Open {
        path: String,
        source: std::io::Error,
    },
    #[error("i/o error reading {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: field {field} is negative ({value})")]
    NegativeCounter {
        line: usize,
        field: &'static str,
        value: i64,
    },
    #[error("line {line}: duplicate account_id {id}")]
    DuplicateAccount { line: usize, id: String },
    #[error("line {line}: account_id is empty")]
    EmptyAccountId { line: usize },
    #[error("line {line}: created_at {created} is after last_tweet_at {last}")]
    DateOrder {
        line: usize,
        created: NaiveDate,
        last: NaiveDate,
    },
    #[error("line {line}: duplicate tweet_id {tweet_id} for account {account}")]
    DuplicateTweet {
        line: usize,
        tweet_id: String,
        account: String,
    },
    #[error("line {line}: unknown delimiter (expected tab, comma, or space separated columns)")]
    UnknownDelimiter { line: usize },
    #[error("pseudonymizer key must not be empty")]
    EmptyKey,
}

/// Snapshot record as parsed before validation. Counters are signed so a
/// negative value is reported as a validation error naming the field rather
/// than an opaque parse failure.
#[derive(Deserialize)]
struct RawProfile {
    account_id: String,
    username: String,
    screen_name: String,
    #[serde(default)]
    description: String,
    tweet_count: i64,
    follower_count: i64,
    friend_count: i64,
    favourites_count: i64,
    listed_count: i64,
    location_provided: bool,
    is_protected: bool,
    url_provided: bool,
    has_fawkes_image: bool,
    has_businessman_image: bool,
    created_at: NaiveDate,
    #[serde(default)]
    last_tweet_at: Option<NaiveDate>,
}

fn validate_counter(line: usize, field: &'static str, value: i64) -> Result<u64, IngestError> {
    if value < 0 {
        Err(IngestError::NegativeCounter { line, field, value })
    } else {
        Ok(value as u64)
    }
}

impl RawProfile {
    fn validate(self, line: usize) -> Result<AccountProfile, IngestError> {
        if self.account_id.is_empty() {
            return Err(IngestError::EmptyAccountId { line });
        }
        if let Some(last) = self.last_tweet_at {
            if self.created_at > last {
                return Err(IngestError::DateOrder {
                    line,
                    created: self.created_at,
                    last,
                });
            }
        }
        Ok(AccountProfile {
            account_id: AccountId(self.account_id),
            username: self.username,
            screen_name: self.screen_name,
            description: self.description,
            tweet_count: validate_counter(line, "tweet_count", self.tweet_count)?,
            follower_count: validate_counter(line, "follower_count", self.follower_count)?,
            friend_count: validate_counter(line, "friend_count", self.friend_count)?,
            favourites_count: validate_counter(line, "favourites_count", self.favourites_count)?,
            listed_count: validate_counter(line, "listed_count", self.listed_count)?,
            location_provided: self.location_provided,
            is_protected: self.is_protected,
            url_provided: self.url_provided,
            has_fawkes_image: self.has_fawkes_image,
            has_businessman_image: self.has_businessman_image,
            created_at: self.created_at,
            last_tweet_at: self.last_tweet_at,
        })
    }
}

fn open_lines(
    path: &Path,
) -> Result<impl Iterator<Item = (usize, std::io::Result<String>)>, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Open {
        path: path.display().to_string(),
        source,
    })?;
    Ok(BufReader::new(file)
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l)))
}

/// Load and validate account snapshots from a JSON Lines file.
///
/// Profiles are returned in file order. Blank lines are skipped. Every error
/// names the offending 1-based line.
pub fn load_snapshots(path: impl AsRef<Path>) -> Result<Vec<AccountProfile>, IngestError> {
    let path = path.as_ref();
    let mut profiles = Vec::new();
    let mut seen = HashSet::new();
    for (line_no, line) in open_lines(path)? {
        let line = line.map_err(|source| IngestError::Read {
            path: path.display().to_string(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawProfile = serde_json::from_str(&line).map_err(|e| IngestError::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
        let profile = raw.validate(line_no)?;
        if !seen.insert(profile.account_id.clone()) {
            return Err(IngestError::DuplicateAccount {
                line: line_no,
                id: profile.account_id.0.clone(),
            });
        }
        profiles.push(profile);
    }
    Ok(profiles)
}

/// Write profiles back out in the snapshot file format, one JSON object per
/// line. `load_snapshots(write_snapshots(p))` round-trips to an identical
/// list.
pub fn write_snapshots(
    path: impl AsRef<Path>,
    profiles: &[AccountProfile],
) -> Result<(), IngestError> {
    let path = path.as_ref();
    let mut out = File::create(path).map_err(|source| IngestError::Open {
        path: path.display().to_string(),
        source,
    })?;
    for p in profiles {
        let json = serde_json::to_string(p).expect("profile serializes");
        writeln!(out, "{json}").map_err(|source| IngestError::Read {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

/// Result of loading an edge file: the deduplicated edges plus counts of
/// rows that were dropped rather than kept.
#[derive(Debug, Clone, Default)]
pub struct EdgeLoad {
    pub edges: Vec<FollowEdge>,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

fn split_edge_row(line: &str, line_no: usize) -> Result<(String, String), IngestError> {
    for sep in ['\t', ','] {
        let mut parts = line.split(sep);
        if let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) {
            let (a, b) = (a.trim(), b.trim());
            if !a.is_empty() && !b.is_empty() {
                return Ok((a.to_owned(), b.to_owned()));
            }
        }
    }
    let ws: Vec<&str> = line.split_whitespace().collect();
    if ws.len() == 2 {
        return Ok((ws[0].to_owned(), ws[1].to_owned()));
    }
    Err(IngestError::UnknownDelimiter { line: line_no })
}

/// Load a two-column (follower_id, followee_id) edge file.
///
/// Tab, comma, and whitespace delimiters are accepted. Duplicate edges
/// collapse to one and self-follows are dropped; both are counted in the
/// returned [`EdgeLoad`]. Direction matters: (a,b) and (b,a) are distinct.
pub fn load_edges(path: impl AsRef<Path>) -> Result<EdgeLoad, IngestError> {
    let path = path.as_ref();
    let mut load = EdgeLoad::default();
    let mut seen = HashSet::new();
    for (line_no, line) in open_lines(path)? {
        let line = line.map_err(|source| IngestError::Read {
            path: path.display().to_string(),
            source,
        })?;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (follower, followee) = split_edge_row(&line, line_no)?;
        if follower == followee {
            load.self_loops_dropped += 1;
            continue;
        }
        let edge = FollowEdge {
            follower_id: AccountId(follower),
            followee_id: AccountId(followee),
        };
        if seen.insert(edge.clone()) {
            load.edges.push(edge);
        } else {
            load.duplicates_dropped += 1;
        }
    }
    Ok(load)
}

/// Load a tweet archive from a JSON Lines file. Tweet ids must be unique per
/// account; text is validated Unicode by construction.
pub fn load_tweets(path: impl AsRef<Path>) -> Result<Vec<TweetRecord>, IngestError> {
    let path = path.as_ref();
    let mut tweets = Vec::new();
    let mut seen: HashSet<(AccountId, String)> = HashSet::new();
    for (line_no, line) in open_lines(path)? {
        let line = line.map_err(|source| IngestError::Read {
            path: path.display().to_string(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let tweet: TweetRecord =
            serde_json::from_str(&line).map_err(|e| IngestError::Malformed {
                line: line_no,
                message: e.to_string(),
            })?;
        let key = (tweet.account_id.clone(), tweet.tweet_id.clone());
        if !seen.insert(key) {
            return Err(IngestError::DuplicateTweet {
                line: line_no,
                tweet_id: tweet.tweet_id,
                account: tweet.account_id.0,
            });
        }
        tweets.push(tweet);
    }
    Ok(tweets)
}

/// Count edge endpoints that do not resolve to a loaded profile. Nothing is
/// dropped silently: callers surface this count in their reports.
pub fn unresolved_endpoints(profiles: &[AccountProfile], edges: &[FollowEdge]) -> usize {
    let known: HashSet<&AccountId> = profiles.iter().map(|p| &p.account_id).collect();
    let mut unresolved = HashSet::new();
    for e in edges {
        if !known.contains(&e.follower_id) {
            unresolved.insert(&e.follower_id);
        }
        if !known.contains(&e.followee_id) {
            unresolved.insert(&e.followee_id);
        }
    }
    unresolved.len()
}
