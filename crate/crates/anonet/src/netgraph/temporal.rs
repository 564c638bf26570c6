//! Temporal activity reports: creation-year and last-tweet-year histograms,
//! and the fraction of top-ranked accounts created inside a year window.

use std::collections::{BTreeMap, HashMap};

use chrono::Datelike;
use serde::{Deserialize, Serialize};

use crate::ingest::{AccountId, AccountProfile};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemporalReport {
    pub created_per_year: BTreeMap<i32, usize>,
    pub last_tweet_per_year: BTreeMap<i32, usize>,
    /// Accounts with no recorded last tweet.
    pub unknown_last_tweet: usize,
    pub era_window: (i32, i32),
    /// Of the top-k ranked accounts with known profiles, the fraction
    /// created inside the window (inclusive).
    pub era_fraction: f64,
    /// How many top-ranked accounts the fraction was computed over.
    pub era_sample: usize,
}

/// Histogram profiles by creation and last-tweet year, and compute the
/// in-window creation fraction over the first `top_k` entries of `ranked`.
pub fn temporal_report(
    profiles: &[AccountProfile],
    ranked: &[AccountId],
    top_k: usize,
    window: (i32, i32),
) -> TemporalReport {
    let mut created_per_year = BTreeMap::new();
    let mut last_tweet_per_year = BTreeMap::new();
    let mut unknown = 0usize;
    let by_id: HashMap<&AccountId, &AccountProfile> =
        profiles.iter().map(|p| (&p.account_id, p)).collect();

    for p in profiles {
        *created_per_year.entry(p.created_at.year()).or_insert(0) += 1;
        match p.last_tweet_at {
            Some(d) => *last_tweet_per_year.entry(d.year()).or_insert(0) += 1,
            None => unknown += 1,
        }
    }

    let top: Vec<&AccountProfile> = ranked
        .iter()
        .take(top_k)
        .filter_map(|id| by_id.get(id).copied())
        .collect();
    let in_window = top
        .iter()
        .filter(|p| {
            let y = p.created_at.year();
            y >= window.0 && y <= window.1
        })
        .count();
    let era_fraction = if top.is_empty() {
        0.0
    } else {
        in_window as f64 / top.len() as f64
    };

    TemporalReport {
        created_per_year,
        last_tweet_per_year,
        unknown_last_tweet: unknown,
        era_window: window,
        era_fraction,
        era_sample: top.len(),
    }
}
