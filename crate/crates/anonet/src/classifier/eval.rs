//! Stratified k-fold cross validation with support-weighted precision,
//! recall, and F1 over the pooled out-of-fold predictions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::forest::{mix_seed, train_forest};
use super::tree::train_tree;
use super::{ClassifierError, LabeledExample, ModelSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

/// Evaluation summary. `confusion[actual][predicted]` with index 0 negative
/// and 1 positive; entries sum to the evaluated example count. Top-level
/// precision/recall/f1 are support-weighted averages over the two classes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub folds: usize,
    pub confusion: [[usize; 2]; 2],
    pub per_class: Vec<ClassMetrics>,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

fn safe_div(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn f1_from(precision: f64, recall: f64) -> f64 {
    safe_div(2.0 * precision * recall, precision + recall)
}

/// Build the report from a pooled confusion matrix.
pub fn report_from_confusion(confusion: [[usize; 2]; 2], folds: usize) -> EvalReport {
    let tn = confusion[0][0] as f64;
    let fp = confusion[0][1] as f64;
    let fn_ = confusion[1][0] as f64;
    let tp = confusion[1][1] as f64;

    let pos_precision = safe_div(tp, tp + fp);
    let pos_recall = safe_div(tp, tp + fn_);
    let neg_precision = safe_div(tn, tn + fn_);
    let neg_recall = safe_div(tn, tn + fp);

    let pos_support = (tp + fn_) as usize;
    let neg_support = (tn + fp) as usize;
    let total = (pos_support + neg_support) as f64;

    let per_class = vec![
        ClassMetrics {
            class: "positive".to_string(),
            precision: pos_precision,
            recall: pos_recall,
            f1: f1_from(pos_precision, pos_recall),
            support: pos_support,
        },
        ClassMetrics {
            class: "negative".to_string(),
            precision: neg_precision,
            recall: neg_recall,
            f1: f1_from(neg_precision, neg_recall),
            support: neg_support,
        },
    ];
    let weighted = |f: fn(&ClassMetrics) -> f64| {
        per_class
            .iter()
            .map(|m| f(m) * m.support as f64)
            .sum::<f64>()
            / total
    };
    EvalReport {
        folds,
        confusion,
        precision: weighted(|m| m.precision),
        recall: weighted(|m| m.recall),
        f1: weighted(|m| m.f1),
        per_class,
    }
}

/// Assign each example to one of `k` stratified folds. Each class is
/// shuffled with its own seeded stream and dealt round-robin, so every fold
/// holds a proportional share of both classes.
fn stratified_folds(
    data: &[LabeledExample],
    k: usize,
    seed: u64,
) -> Result<Vec<usize>, ClassifierError> {
    let mut by_class: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (i, ex) in data.iter().enumerate() {
        by_class[ex.positive as usize].push(i);
    }
    for (class, members) in by_class.iter().enumerate() {
        if members.len() < k {
            return Err(ClassifierError::ClassTooSmall {
                class: if class == 1 { "positive" } else { "negative" },
                count: members.len(),
                folds: k,
            });
        }
    }
    let mut fold_of = vec![0usize; data.len()];
    for (class, members) in by_class.iter_mut().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 0x10 + class as u64));
        members.shuffle(&mut rng);
        for (j, &i) in members.iter().enumerate() {
            fold_of[i] = j % k;
        }
    }
    Ok(fold_of)
}

/// Stratified k-fold cross validation. Out-of-fold predictions cover every
/// example exactly once and are pooled into a single confusion matrix.
pub fn cross_validate(
    data: &[LabeledExample],
    spec: &ModelSpec,
    k: usize,
    seed: u64,
) -> Result<EvalReport, ClassifierError> {
    if k < 2 {
        return Err(ClassifierError::TooFewFolds { folds: k });
    }
    type Predictor<'a> = Box<dyn Fn(&[f64]) -> Result<bool, ClassifierError> + 'a>;
    let fold_of = stratified_folds(data, k, seed)?;
    let mut confusion = [[0usize; 2]; 2];
    for fold in 0..k {
        let train: Vec<(&[f64], bool)> = data
            .iter()
            .enumerate()
            .filter(|(i, _)| fold_of[*i] != fold)
            .map(|(_, ex)| (ex.features.values.as_slice(), ex.positive))
            .collect();
        let predict: Predictor = match spec {
            ModelSpec::Tree(params) => {
                let tree = train_tree(&train, *params)?;
                Box::new(move |x| tree.vote(x))
            }
            ModelSpec::Forest(params) => {
                let forest = train_forest(&train, *params, mix_seed(seed, 0x20 + fold as u64))?;
                Box::new(move |x| forest.predict(x))
            }
        };
        for (i, ex) in data.iter().enumerate() {
            if fold_of[i] != fold {
                continue;
            }
            let predicted = predict(&ex.features.values)?;
            confusion[ex.positive as usize][predicted as usize] += 1;
        }
    }
    Ok(report_from_confusion(confusion, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{ForestParams, TreeParams};
    use crate::features::{FeatureVector, SCHEMA_VERSION};

    fn example(values: Vec<f64>, positive: bool, id: usize) -> LabeledExample {
        LabeledExample {
            account_id: format!("acc{id}").as_str().into(),
            features: FeatureVector {
                values,
                schema_version: SCHEMA_VERSION,
            },
            positive,
        }
    }

    fn separable(n_per_class: usize) -> Vec<LabeledExample> {
        let mut data = Vec::new();
        for i in 0..n_per_class {
            let j = i as f64 * 0.01;
            data.push(example(vec![j, 1.0 + j], true, i));
            data.push(example(vec![1.0 + j, j], false, n_per_class + i));
        }
        data
    }

    #[test]
    fn confusion_total_equals_dataset_size() {
        let data = separable(10);
        let report = cross_validate(&data, &ModelSpec::Tree(TreeParams::default()), 5, 1).unwrap();
        let total: usize = report.confusion.iter().flatten().sum();
        assert_eq!(total, data.len());
    }

    #[test]
    fn separable_data_scores_near_one() {
        let data = separable(20);
        let report = cross_validate(&data, &ModelSpec::Tree(TreeParams::default()), 5, 1).unwrap();
        assert!(report.f1 >= 0.99, "f1 = {}", report.f1);
    }

    #[test]
    fn randomized_labels_score_near_majority_share() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let data: Vec<LabeledExample> = (0..120)
            .map(|i| {
                let values = vec![
                    rng.random::<f64>(),
                    rng.random::<f64>(),
                    rng.random::<f64>(),
                ];
                example(values, rng.random::<bool>(), i)
            })
            .collect();
        let positives = data.iter().filter(|e| e.positive).count() as f64;
        let max_share = (positives / data.len() as f64).max(1.0 - positives / data.len() as f64);
        let report = cross_validate(
            &data,
            &ModelSpec::Forest(ForestParams {
                trees: 25,
                ..ForestParams::default()
            }),
            5,
            2,
        )
        .unwrap();
        assert!(
            (report.f1 - max_share).abs() <= 0.1,
            "f1 = {} vs majority share {}",
            report.f1,
            max_share
        );
    }

    #[test]
    fn small_class_is_an_error() {
        let mut data = separable(10);
        data.truncate(13); // positives 7, negatives 6
        data.retain(|e| e.positive);
        let err = cross_validate(&data, &ModelSpec::Tree(TreeParams::default()), 5, 1).unwrap_err();
        assert!(matches!(err, ClassifierError::ClassTooSmall { .. }));
    }

    #[test]
    fn forest_f1_at_least_tree_f1_on_noisy_fixture() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut data = Vec::new();
        for i in 0..80 {
            let x: f64 = rng.random();
            let y: f64 = rng.random();
            let noise: f64 = rng.random::<f64>() * 0.6 - 0.3;
            let positive = x + y * 0.5 + noise > 0.75;
            data.push(example(vec![x, y, rng.random()], positive, i));
        }
        let tree = cross_validate(&data, &ModelSpec::Tree(TreeParams::default()), 5, 3).unwrap();
        let forest = cross_validate(
            &data,
            &ModelSpec::Forest(ForestParams {
                trees: 60,
                ..ForestParams::default()
            }),
            5,
            3,
        )
        .unwrap();
        assert!(
            forest.f1 >= tree.f1,
            "forest {} < tree {}",
            forest.f1,
            tree.f1
        );
    }
}
