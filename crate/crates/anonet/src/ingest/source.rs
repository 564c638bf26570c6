//! Pluggable account source so snowball expansion can run against fixtures.
//!
//! Live collection is out of scope; the file-backed [`SnapshotSource`] serves
//! profiles and neighbourhoods from loaded snapshot and edge collections.

use std::collections::HashMap;

use thiserror::Error;

use super::{AccountId, AccountProfile, FollowEdge};

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("account source failure: {0}")]
    Backend(String),
}

/// Read access to account profiles and their neighbourhoods.
///
/// `get_followers(q)` returns the accounts following `q`; `get_friends(p)`
/// returns the accounts `p` follows. Both lists are sorted by account id so
/// traversal order is deterministic.
pub trait AccountSource {
    fn get_profile(&self, id: &AccountId) -> Result<Option<AccountProfile>, SourceError>;
    fn get_followers(&self, id: &AccountId) -> Result<Vec<AccountId>, SourceError>;
    fn get_friends(&self, id: &AccountId) -> Result<Vec<AccountId>, SourceError>;
}

/// In-memory source backed by loaded snapshot and edge files.
#[derive(Debug, Clone)]
pub struct SnapshotSource {
    profiles: HashMap<AccountId, AccountProfile>,
    followers: HashMap<AccountId, Vec<AccountId>>,
    friends: HashMap<AccountId, Vec<AccountId>>,
}

impl SnapshotSource {
    pub fn new(profiles: Vec<AccountProfile>, edges: &[FollowEdge]) -> Self {
        let profiles: HashMap<AccountId, AccountProfile> = profiles
            .into_iter()
            .map(|p| (p.account_id.clone(), p))
            .collect();
        let mut followers: HashMap<AccountId, Vec<AccountId>> = HashMap::new();
        let mut friends: HashMap<AccountId, Vec<AccountId>> = HashMap::new();
        for e in edges {
            followers
                .entry(e.followee_id.clone())
                .or_default()
                .push(e.follower_id.clone());
            friends
                .entry(e.follower_id.clone())
                .or_default()
                .push(e.followee_id.clone());
        }
        for list in followers.values_mut().chain(friends.values_mut()) {
            list.sort();
            list.dedup();
        }
        SnapshotSource {
            profiles,
            followers,
            friends,
        }
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }
}

impl AccountSource for SnapshotSource {
    fn get_profile(&self, id: &AccountId) -> Result<Option<AccountProfile>, SourceError> {
        Ok(self.profiles.get(id).cloned())
    }

    fn get_followers(&self, id: &AccountId) -> Result<Vec<AccountId>, SourceError> {
        Ok(self.followers.get(id).cloned().unwrap_or_default())
    }

    fn get_friends(&self, id: &AccountId) -> Result<Vec<AccountId>, SourceError> {
        Ok(self.friends.get(id).cloned().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn profile(id: &str) -> AccountProfile {
        AccountProfile {
            account_id: id.into(),
            username: id.to_owned(),
            screen_name: id.to_owned(),
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

    fn edge(a: &str, b: &str) -> FollowEdge {
        FollowEdge {
            follower_id: a.into(),
            followee_id: b.into(),
        }
    }

    #[test]
    fn followers_and_friends_split_by_direction() {
        let src = SnapshotSource::new(
            vec![profile("a"), profile("b"), profile("c")],
            &[edge("a", "b"), edge("c", "b"), edge("b", "a")],
        );
        assert_eq!(
            src.get_followers(&"b".into()).unwrap(),
            vec![AccountId::from("a"), AccountId::from("c")]
        );
        assert_eq!(
            src.get_friends(&"b".into()).unwrap(),
            vec![AccountId::from("a")]
        );
        assert_eq!(
            src.get_friends(&"a".into()).unwrap(),
            vec![AccountId::from("b")]
        );
        assert!(src.get_profile(&"missing".into()).unwrap().is_none());
    }
}
