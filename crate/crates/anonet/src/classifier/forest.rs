//! Random forest over the decision tree, with per-tree RNG streams derived
//! from (seed, tree index) so results are identical regardless of how many
//! workers train trees in parallel.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{grow_tree, DecisionTree, FeaturePicker, TreeParams};
use super::ClassifierError;

/// Forest hyperparameters. `features_per_split = 0` means the conventional
/// floor(sqrt(feature_count)) (7 for the 62-feature schema).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestParams {
    pub trees: usize,
    pub features_per_split: usize,
    pub bootstrap: bool,
    pub tree: TreeParams,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            trees: 100,
            features_per_split: 0,
            bootstrap: true,
            tree: TreeParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    pub params: ForestParams,
    pub rng_seed: u64,
    pub feature_count: usize,
    pub trees: Vec<DecisionTree>,
}

/// splitmix64, used to derive independent RNG streams from (seed, index).
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct RandomSubset<'a> {
    rng: &'a mut ChaCha8Rng,
    feature_count: usize,
    subset_size: usize,
}

impl FeaturePicker for RandomSubset<'_> {
    /// Partial Fisher-Yates draw of `subset_size` distinct feature indices.
    fn pick(&mut self) -> Vec<usize> {
        let mut pool: Vec<usize> = (0..self.feature_count).collect();
        let take = self.subset_size.min(self.feature_count);
        for i in 0..take {
            let j = self.rng.random_range(i..pool.len());
            pool.swap(i, j);
        }
        pool.truncate(take);
        pool
    }
}

/// Train a forest. Each tree sees a bootstrap resample (when enabled) and a
/// fresh random feature subset at every split; both are drawn from a ChaCha
/// stream seeded by `mix_seed(seed, tree_index)`, making training
/// reproducible from `seed` alone.
pub fn train_forest(
    data: &[(&[f64], bool)],
    params: ForestParams,
    seed: u64,
) -> Result<RandomForest, ClassifierError> {
    if data.is_empty() {
        return Err(ClassifierError::EmptyDataset);
    }
    if params.trees == 0 {
        return Err(ClassifierError::NoTrees);
    }
    let feature_count = data[0].0.len();
    let subset_size = if params.features_per_split == 0 {
        (feature_count as f64).sqrt().floor().max(1.0) as usize
    } else {
        params.features_per_split.min(feature_count)
    };

    let trees: Result<Vec<DecisionTree>, ClassifierError> = (0..params.trees)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, index as u64));
            let sample: Vec<(&[f64], bool)> = if params.bootstrap {
                (0..data.len())
                    .map(|_| data[rng.random_range(0..data.len())])
                    .collect()
            } else {
                data.to_vec()
            };
            let mut picker = RandomSubset {
                rng: &mut rng,
                feature_count,
                subset_size,
            };
            grow_tree(&sample, params.tree, &mut picker)
        })
        .collect();

    Ok(RandomForest {
        params,
        rng_seed: seed,
        feature_count,
        trees: trees?,
    })
}

impl RandomForest {
    /// Fraction of trees voting positive.
    pub fn score(&self, features: &[f64]) -> Result<f64, ClassifierError> {
        if features.len() != self.feature_count {
            return Err(ClassifierError::FeatureLengthMismatch {
                expected: self.feature_count,
                got: features.len(),
            });
        }
        let mut votes = 0usize;
        for tree in &self.trees {
            if tree.vote(features)? {
                votes += 1;
            }
        }
        Ok(votes as f64 / self.trees.len() as f64)
    }

    /// Hard label: positive when the score reaches 0.5 (boundary inclusive).
    pub fn predict(&self, features: &[f64]) -> Result<bool, ClassifierError> {
        Ok(self.score(features)? >= 0.5)
    }
}
