//! Declarative pipeline configuration: a single TOML file, with global
//! flags overriding individual fields (flags win; precedence documented in
//! the README).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use anonet::classifier::{ForestParams, ModelSpec, TreeParams};
use anonet::netgraph::{CentralityOptions, DegreeMode, InfluenceDirection};
use anonet::topics::{CoherenceParams, LdaParams, PreprocessConfig};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathsConfig {
    pub snapshots: PathBuf,
    pub edges: PathBuf,
    #[serde(default)]
    pub tweets: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct LexiconConfig {
    pub keywords: Option<PathBuf>,
    pub hacker_terms: Option<PathBuf>,
    pub motto_patterns: Option<PathBuf>,
    pub sentiment: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassifierConfig {
    /// "forest" or "tree".
    pub model: String,
    pub trees: usize,
    /// 0 selects floor(sqrt(feature_count)).
    pub features_per_split: usize,
    pub bootstrap: bool,
    /// 0 means unlimited depth.
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub folds: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            model: "forest".to_string(),
            trees: 100,
            features_per_split: 0,
            bootstrap: true,
            max_depth: 0,
            min_samples_leaf: 1,
            folds: 5,
        }
    }
}

impl ClassifierConfig {
    pub fn tree_params(&self) -> TreeParams {
        TreeParams {
            max_depth: (self.max_depth > 0).then_some(self.max_depth),
            min_samples_leaf: self.min_samples_leaf,
        }
    }

    pub fn forest_params(&self) -> ForestParams {
        ForestParams {
            trees: self.trees,
            features_per_split: self.features_per_split,
            bootstrap: self.bootstrap,
            tree: self.tree_params(),
        }
    }

    pub fn model_spec(&self) -> Result<ModelSpec, CliError> {
        match self.model.as_str() {
            "forest" => Ok(ModelSpec::Forest(self.forest_params())),
            "tree" => Ok(ModelSpec::Tree(self.tree_params())),
            other => Err(CliError::Config(format!(
                "classifier.model must be \"forest\" or \"tree\", got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ExpandConfig {
    pub seeds: Vec<String>,
    pub stages: usize,
}

impl Default for ExpandConfig {
    fn default() -> Self {
        ExpandConfig {
            seeds: Vec::new(),
            stages: 2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct CentralityConfig {
    pub damping: f64,
    pub pagerank_tol: f64,
    pub pagerank_max_iter: usize,
    pub eigenvector_tol: f64,
    pub eigenvector_max_iter: usize,
    /// "incoming" (default) or "outgoing".
    pub influence: String,
    /// "total" (default), "in", or "out".
    pub degree: String,
}

impl Default for CentralityConfig {
    fn default() -> Self {
        CentralityConfig {
            damping: 0.85,
            pagerank_tol: 1e-9,
            pagerank_max_iter: 200,
            eigenvector_tol: 1e-8,
            eigenvector_max_iter: 1000,
            influence: "incoming".to_string(),
            degree: "total".to_string(),
        }
    }
}

impl CentralityConfig {
    pub fn options(&self) -> Result<CentralityOptions, CliError> {
        let direction = match self.influence.as_str() {
            "incoming" => InfluenceDirection::Incoming,
            "outgoing" => InfluenceDirection::Outgoing,
            other => {
                return Err(CliError::Config(format!(
                    "centrality.influence must be \"incoming\" or \"outgoing\", got {other:?}"
                )))
            }
        };
        let degree_mode = match self.degree.as_str() {
            "total" => DegreeMode::Total,
            "in" => DegreeMode::In,
            "out" => DegreeMode::Out,
            other => {
                return Err(CliError::Config(format!(
                    "centrality.degree must be \"total\", \"in\", or \"out\", got {other:?}"
                )))
            }
        };
        Ok(CentralityOptions {
            damping: self.damping,
            pagerank_tol: self.pagerank_tol,
            pagerank_max_iter: self.pagerank_max_iter,
            eigenvector_tol: self.eigenvector_tol,
            eigenvector_max_iter: self.eigenvector_max_iter,
            direction,
            degree_mode,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RankConfig {
    pub top_k: usize,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig { top_k: 10 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct TemporalConfig {
    pub window_start: i32,
    pub window_end: i32,
    pub top_k: usize,
}

impl Default for TemporalConfig {
    fn default() -> Self {
        TemporalConfig {
            window_start: 2011,
            window_end: 2013,
            top_k: 50,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SubgraphConfig {
    pub k: usize,
}

impl Default for SubgraphConfig {
    fn default() -> Self {
        SubgraphConfig { k: 100 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct TopicsConfig {
    pub top_accounts: usize,
    pub recent_limit: usize,
    pub grid_start: usize,
    pub grid_step: usize,
    pub grid_max: usize,
    pub seeds_per_k: usize,
    pub iterations: usize,
    /// 0 selects the 50/K convention.
    pub alpha: f64,
    pub beta: f64,
    pub top_words: usize,
    pub coherence_window: usize,
    pub bigram_min_count: usize,
    pub bigram_min_pmi: f64,
    pub min_token_len: usize,
    pub stopwords: Option<PathBuf>,
    pub contractions: Option<PathBuf>,
    /// Per-account topic-number overrides, keyed by raw account id (the
    /// config is an input; raw ids never reach emitted artifacts).
    pub k_override: BTreeMap<String, usize>,
}

impl Default for TopicsConfig {
    fn default() -> Self {
        TopicsConfig {
            top_accounts: 6,
            recent_limit: 1500,
            grid_start: 2,
            grid_step: 6,
            grid_max: 40,
            seeds_per_k: 3,
            iterations: 1000,
            alpha: 0.0,
            beta: 0.01,
            top_words: 10,
            coherence_window: 10,
            bigram_min_count: 10,
            bigram_min_pmi: 3.0,
            min_token_len: 2,
            stopwords: None,
            contractions: None,
            k_override: BTreeMap::new(),
        }
    }
}

impl TopicsConfig {
    pub fn lda_params(&self) -> LdaParams {
        LdaParams {
            iterations: self.iterations,
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    pub fn coherence_params(&self) -> CoherenceParams {
        CoherenceParams {
            top_n: self.top_words,
            window: self.coherence_window,
            epsilon: 1e-12,
        }
    }

    pub fn preprocess_config(&self) -> PreprocessConfig {
        PreprocessConfig {
            min_token_len: self.min_token_len,
            bigram_min_count: self.bigram_min_count,
            bigram_min_pmi: self.bigram_min_pmi,
        }
    }
}

/// The resolved pipeline configuration after flag overrides.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Global seed; must be set explicitly (file or --seed flag).
    pub seed: Option<u64>,
    /// Worker cap for internal parallelism; 0 means all cores.
    #[serde(default)]
    pub workers: usize,
    pub output_dir: PathBuf,
    pub pseudonym_key: String,
    pub paths: PathsConfig,
    #[serde(default)]
    pub lexicon: LexiconConfig,
    #[serde(default)]
    pub classifier: ClassifierConfig,
    #[serde(default)]
    pub expand: ExpandConfig,
    #[serde(default)]
    pub centrality: CentralityConfig,
    #[serde(default)]
    pub rank: RankConfig,
    #[serde(default)]
    pub temporal: TemporalConfig,
    #[serde(default)]
    pub subgraph: SubgraphConfig,
    #[serde(default)]
    pub topics: TopicsConfig,
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut config: PipelineConfig = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))?;
        // Relative paths resolve against the config file's directory.
        if let Some(base) = path.parent() {
            config.paths.snapshots = resolve(base, &config.paths.snapshots);
            config.paths.edges = resolve(base, &config.paths.edges);
            config.paths.tweets = config.paths.tweets.map(|p| resolve(base, &p));
            config.output_dir = resolve(base, &config.output_dir);
            for entry in [
                &mut config.lexicon.keywords,
                &mut config.lexicon.hacker_terms,
                &mut config.lexicon.motto_patterns,
                &mut config.lexicon.sentiment,
                &mut config.topics.stopwords,
                &mut config.topics.contractions,
            ] {
                if let Some(p) = entry.take() {
                    *entry = Some(resolve(base, &p));
                }
            }
        }
        Ok(config)
    }

    /// Check the invariants a run depends on: seed explicit, key non-empty,
    /// referenced input files present, output dir creatable.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.seed.is_none() {
            return Err(CliError::Config(
                "seed must be set explicitly (config `seed` or --seed flag)".to_string(),
            ));
        }
        if self.pseudonym_key.is_empty() {
            return Err(CliError::Config(
                "pseudonym_key must not be empty".to_string(),
            ));
        }
        let mut required: Vec<&Path> = vec![&self.paths.snapshots, &self.paths.edges];
        let optional: Vec<Option<&PathBuf>> = vec![
            self.paths.tweets.as_ref(),
            self.lexicon.keywords.as_ref(),
            self.lexicon.hacker_terms.as_ref(),
            self.lexicon.motto_patterns.as_ref(),
            self.lexicon.sentiment.as_ref(),
            self.topics.stopwords.as_ref(),
            self.topics.contractions.as_ref(),
        ];
        required.extend(optional.into_iter().flatten().map(|p| p.as_path()));
        for path in required {
            if !path.exists() {
                return Err(CliError::Config(format!(
                    "referenced file does not exist: {}",
                    path.display()
                )));
            }
        }
        fs::create_dir_all(&self.output_dir).map_err(|e| {
            CliError::Config(format!(
                "output dir {} is not writable: {e}",
                self.output_dir.display()
            ))
        })?;
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.expect("validated")
    }
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}
