//! Classifier-gated snowball expansion over an account source.
//!
//! Stage k classifies the followers and friends of stage k-1's acceptances
//! (stage 1 starts from the seeds). Neighbours are visited in ascending id
//! order and never revisited, so runs are reproducible from the same seeds,
//! source snapshot, and classifier.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{AccountId, AccountProfile, AccountSource};

#[derive(Debug, Error)]
pub enum SnowballError {
    #[error("seed {id} cannot be resolved by the account source")]
    UnresolvableSeed { id: AccountId },
    #[error("stage {stage} failed: {message} (partial results preserved)")]
    Stage {
        stage: usize,
        message: String,
        partial: Box<SnowballRun>,
    },
}

/// Result of a snowball run with per-stage provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SnowballRun {
    pub seeds: Vec<AccountId>,
    pub stages: usize,
    /// Frontier used at each stage; entry 0 is the seed set, entry k the
    /// accounts expanded at stage k+1.
    pub frontier_history: Vec<Vec<AccountId>>,
    /// Accounts accepted (classified positive) at each stage, disjoint from
    /// the seeds and from earlier stages.
    pub accepted_by_stage: Vec<Vec<AccountId>>,
    pub rejected: usize,
    pub unresolved: usize,
}

impl SnowballRun {
    /// Deduplicated union of acceptances across stages, in stage order.
    pub fn accepted(&self) -> Vec<AccountId> {
        self.accepted_by_stage.iter().flatten().cloned().collect()
    }
}

/// Run `stages` rounds of expansion from `seeds`, accepting accounts the
/// classifier marks positive. Every follower and friend of the frontier is
/// classified, whether or not it would pass any name filter. A source
/// failure mid-stage surfaces as a stage-level error carrying the partial
/// run.
pub fn snowball_expand<C>(
    seeds: &[AccountId],
    source: &dyn AccountSource,
    classify: C,
    stages: usize,
) -> Result<SnowballRun, SnowballError>
where
    C: Fn(&AccountProfile) -> bool,
{
    let mut seed_list: Vec<AccountId> = seeds.to_vec();
    seed_list.sort();
    seed_list.dedup();
    for seed in &seed_list {
        match source.get_profile(seed) {
            Ok(Some(_)) => {}
            _ => return Err(SnowballError::UnresolvableSeed { id: seed.clone() }),
        }
    }

    let mut run = SnowballRun {
        seeds: seed_list.clone(),
        stages,
        frontier_history: vec![seed_list.clone()],
        accepted_by_stage: Vec::new(),
        rejected: 0,
        unresolved: 0,
    };
    let mut seen: HashSet<AccountId> = seed_list.iter().cloned().collect();
    let mut frontier = seed_list;

    for stage in 1..=stages {
        let mut neighbours: BTreeSet<AccountId> = BTreeSet::new();
        for id in &frontier {
            let stage_err = |message: String, run: &SnowballRun| SnowballError::Stage {
                stage,
                message,
                partial: Box::new(run.clone()),
            };
            let followers = source
                .get_followers(id)
                .map_err(|e| stage_err(e.to_string(), &run))?;
            let friends = source
                .get_friends(id)
                .map_err(|e| stage_err(e.to_string(), &run))?;
            neighbours.extend(followers);
            neighbours.extend(friends);
        }
        let mut accepted_stage = Vec::new();
        for id in neighbours {
            if !seen.insert(id.clone()) {
                continue;
            }
            let profile = source.get_profile(&id).map_err(|e| SnowballError::Stage {
                stage,
                message: e.to_string(),
                partial: Box::new(run.clone()),
            })?;
            match profile {
                None => run.unresolved += 1,
                Some(p) => {
                    if classify(&p) {
                        accepted_stage.push(id);
                    } else {
                        run.rejected += 1;
                    }
                }
            }
        }
        run.accepted_by_stage.push(accepted_stage.clone());
        frontier = accepted_stage;
        run.frontier_history.push(frontier.clone());
    }
    Ok(run)
}
