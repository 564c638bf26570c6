//! Shared run context: resolved config, keyword table, sentiment lexicon,
//! pseudonymizer, and the input loaders every command goes through.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use anonet::features::{extract_features, FeatureVector, SentimentLexicon};
use anonet::ingest::{
    self, AccountId, AccountProfile, EdgeLoad, Pseudonym, Pseudonymizer, TweetRecord,
};
use anonet::lexicon::{load_term_list, KeywordTable};

use crate::config::PipelineConfig;
use crate::CliError;

pub struct RunContext {
    pub config: PipelineConfig,
    pub table: KeywordTable,
    pub sentiment: SentimentLexicon,
    pub pseudonymizer: Pseudonymizer,
}

impl RunContext {
    pub fn new(config: PipelineConfig) -> Result<Self, CliError> {
        config.validate()?;
        let defaults = KeywordTable::default();
        let keywords = match &config.lexicon.keywords {
            Some(path) => load_term_list(path)?,
            None => defaults.keywords.clone(),
        };
        let hacker_terms = match &config.lexicon.hacker_terms {
            Some(path) => load_term_list(path)?,
            None => defaults.hacker_terms.clone(),
        };
        let motto_patterns = match &config.lexicon.motto_patterns {
            Some(path) => load_term_list(path)?,
            None => defaults.motto_patterns.clone(),
        };
        let table = KeywordTable::new(keywords, hacker_terms, motto_patterns)?;
        let sentiment = match &config.lexicon.sentiment {
            Some(path) => SentimentLexicon::from_path(path)?,
            None => SentimentLexicon::builtin(),
        };
        let pseudonymizer = Pseudonymizer::new(config.pseudonym_key.as_bytes())?;
        Ok(RunContext {
            config,
            table,
            sentiment,
            pseudonymizer,
        })
    }

    /// Load snapshots and verify the pseudonym mapping is collision-free
    /// over this corpus (pseudonyms double as artifact join keys).
    pub fn load_profiles(&self) -> Result<Vec<AccountProfile>, CliError> {
        let profiles = ingest::load_snapshots(&self.config.paths.snapshots)?;
        let mut seen: HashMap<Pseudonym, &AccountId> = HashMap::new();
        for p in &profiles {
            let pseudonym = self.pseudonym(&p.account_id);
            if let Some(previous) = seen.insert(pseudonym.clone(), &p.account_id) {
                return Err(CliError::Data(format!(
                    "pseudonym collision between accounts (pseudonym {pseudonym}); use a different key (other id: {previous})"
                )));
            }
        }
        Ok(profiles)
    }

    pub fn load_edges(&self) -> Result<EdgeLoad, CliError> {
        Ok(ingest::load_edges(&self.config.paths.edges)?)
    }

    pub fn load_tweets(&self) -> Result<Vec<TweetRecord>, CliError> {
        let path = self.config.paths.tweets.as_ref().ok_or_else(|| {
            CliError::Config("paths.tweets must be set for this command".to_string())
        })?;
        Ok(ingest::load_tweets(path)?)
    }

    pub fn pseudonym(&self, id: &AccountId) -> Pseudonym {
        self.pseudonymizer.pseudonymize(id)
    }

    /// pseudonym -> raw id map over the snapshot corpus, for joining
    /// pseudonymized artifacts back to raw inputs.
    pub fn pseudonym_index(&self, profiles: &[AccountProfile]) -> BTreeMap<Pseudonym, AccountId> {
        profiles
            .iter()
            .map(|p| (self.pseudonym(&p.account_id), p.account_id.clone()))
            .collect()
    }

    pub fn extract(&self, profile: &AccountProfile) -> FeatureVector {
        extract_features(profile, &self.table, &self.sentiment)
    }

    /// Create (if needed) and return the command's output directory.
    pub fn command_dir(&self, command: &str) -> Result<PathBuf, CliError> {
        let dir = self.config.output_dir.join(command);
        fs::create_dir_all(&dir)
            .map_err(|e| CliError::Data(format!("cannot create {}: {e}", dir.display())))?;
        Ok(dir)
    }

    /// Path to another command's artifact, with a clear error when the
    /// stage has not run yet.
    pub fn artifact(&self, command: &str, file: &str) -> Result<PathBuf, CliError> {
        let path = self.config.output_dir.join(command).join(file);
        if !path.exists() {
            return Err(CliError::Data(format!(
                "missing artifact {}: run `{command}` first",
                path.display()
            )));
        }
        Ok(path)
    }
}

pub fn write_text(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

/// Accounts referenced by edges but absent from the snapshot corpus.
pub fn unresolved_endpoint_count(profiles: &[AccountProfile], edges: &EdgeLoad) -> usize {
    let known: HashSet<&AccountId> = profiles.iter().map(|p| &p.account_id).collect();
    let mut unresolved: HashSet<&AccountId> = HashSet::new();
    for e in &edges.edges {
        if !known.contains(&e.follower_id) {
            unresolved.insert(&e.follower_id);
        }
        if !known.contains(&e.followee_id) {
            unresolved.insert(&e.followee_id);
        }
    }
    unresolved.len()
}
