//! Decision-tree and random-forest classifiers over feature vectors, with
//! stratified cross validation and versioned model persistence.

mod eval;
mod forest;
mod tree;

pub use eval::{cross_validate, report_from_confusion, ClassMetrics, EvalReport};
pub use forest::{mix_seed, train_forest, ForestParams, RandomForest};
pub use tree::{gini, train_tree, DecisionTree, Node, TreeParams};

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::FeatureVector;
use crate::ingest::AccountId;

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("class counts are all zero")]
    EmptyCounts,
    #[error("cannot train on an empty dataset")]
    EmptyDataset,
    #[error("forest must have at least one tree")]
    NoTrees,
    #[error("feature length mismatch: expected {expected}, got {got}")]
    FeatureLengthMismatch { expected: usize, got: usize },
    #[error("{class} class has {count} members, fewer than {folds} folds")]
    ClassTooSmall {
        class: &'static str,
        count: usize,
        folds: usize,
    },
    #[error("cross validation needs at least 2 folds, got {folds}")]
    TooFewFolds { folds: usize },
    #[error("model i/o failed for {path}: {message}")]
    ModelIo { path: String, message: String },
    #[error("unsupported model file version {found} (expected {expected})")]
    ModelVersion { found: u32, expected: u32 },
}

/// A training example: the feature vector, its binary label, and the account
/// it came from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledExample {
    pub account_id: AccountId,
    pub features: FeatureVector,
    pub positive: bool,
}

/// Which model family to train.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelSpec {
    Tree(TreeParams),
    Forest(ForestParams),
}

/// A trained model of either family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum TrainedModel {
    Tree(DecisionTree),
    Forest(RandomForest),
}

impl TrainedModel {
    pub fn score(&self, features: &[f64]) -> Result<f64, ClassifierError> {
        match self {
            TrainedModel::Tree(t) => t.score(features),
            TrainedModel::Forest(f) => f.score(features),
        }
    }

    /// Hard label with the documented 0.5 boundary (ties positive).
    pub fn predict(&self, features: &[f64]) -> Result<bool, ClassifierError> {
        Ok(self.score(features)? >= 0.5)
    }

    pub fn feature_count(&self) -> usize {
        match self {
            TrainedModel::Tree(t) => t.feature_count,
            TrainedModel::Forest(f) => f.feature_count,
        }
    }
}

const MODEL_FILE_VERSION: u32 = 1;

/// On-disk model layout: a version tag, then the model parameters, then the
/// trees as preorder node lists.
#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    model: TrainedModel,
}

pub fn save_model(path: impl AsRef<Path>, model: &TrainedModel) -> Result<(), ClassifierError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| ClassifierError::ModelIo {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::to_writer(
        BufWriter::new(file),
        &ModelFile {
            version: MODEL_FILE_VERSION,
            model: model.clone(),
        },
    )
    .map_err(|e| ClassifierError::ModelIo {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<TrainedModel, ClassifierError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| ClassifierError::ModelIo {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let parsed: ModelFile =
        serde_json::from_reader(BufReader::new(file)).map_err(|e| ClassifierError::ModelIo {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    if parsed.version != MODEL_FILE_VERSION {
        return Err(ClassifierError::ModelVersion {
            found: parsed.version,
            expected: MODEL_FILE_VERSION,
        });
    }
    Ok(parsed.model)
}
