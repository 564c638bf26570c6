//! Binary decision tree with greedy Gini-minimising axis-aligned splits.
//!
//! Training is deterministic: candidate features are scanned in ascending
//! index order and thresholds in ascending value order, and a candidate
//! replaces the incumbent only when strictly better, which yields the
//! documented tie-breaking (lowest feature index, then lowest threshold).
//! Nodes are stored in preorder.

use serde::{Deserialize, Serialize};

use super::ClassifierError;

/// Tree growth limits. `max_depth: None` grows until purity or the leaf
/// minimum stops a split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeParams {
    pub max_depth: Option<usize>,
    pub min_samples_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_depth: None,
            min_samples_leaf: 1,
        }
    }
}

/// Tree node: an internal split or a leaf holding class counts
/// (`counts[0]` negative, `counts[1]` positive).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        counts: [usize; 2],
    },
}

/// A trained tree. `nodes[0]` is the root; children precede siblings
/// (preorder).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub params: TreeParams,
    pub feature_count: usize,
    pub nodes: Vec<Node>,
}

/// Gini impurity 1 - sum(p_i^2) over arbitrary class counts.
pub fn gini(class_counts: &[u64]) -> Result<f64, ClassifierError> {
    let total: u64 = class_counts.iter().sum();
    if total == 0 {
        return Err(ClassifierError::EmptyCounts);
    }
    let total = total as f64;
    let sum_sq: f64 = class_counts
        .iter()
        .map(|&c| {
            let p = c as f64 / total;
            p * p
        })
        .sum();
    Ok(1.0 - sum_sq)
}

fn gini2(neg: usize, pos: usize) -> f64 {
    let total = (neg + pos) as f64;
    if total == 0.0 {
        return 0.0;
    }
    let pn = neg as f64 / total;
    let pp = pos as f64 / total;
    1.0 - pn * pn - pp * pp
}

struct BestSplit {
    feature: usize,
    threshold: f64,
    impurity: f64,
}

/// Search the best split over `candidate_features` (must be ascending) for
/// the given sample indices. Returns `None` when no split satisfies the leaf
/// minimum or every candidate feature is constant.
fn best_split(
    data: &[(&[f64], bool)],
    indices: &[usize],
    candidate_features: &[usize],
    min_samples_leaf: usize,
) -> Option<BestSplit> {
    let n = indices.len();
    let mut best: Option<BestSplit> = None;
    let mut column: Vec<(f64, bool)> = Vec::with_capacity(n);
    for &f in candidate_features {
        column.clear();
        column.extend(indices.iter().map(|&i| (data[i].0[f], data[i].1)));
        column.sort_by(|a, b| a.0.total_cmp(&b.0));

        let total_pos = column.iter().filter(|&&(_, l)| l).count();
        let total_neg = n - total_pos;
        let mut left_pos = 0usize;
        let mut left_neg = 0usize;
        for i in 0..n - 1 {
            if column[i].1 {
                left_pos += 1;
            } else {
                left_neg += 1;
            }
            if column[i].0 == column[i + 1].0 {
                continue;
            }
            let left_n = i + 1;
            let right_n = n - left_n;
            if left_n < min_samples_leaf || right_n < min_samples_leaf {
                continue;
            }
            let right_pos = total_pos - left_pos;
            let right_neg = total_neg - left_neg;
            let impurity = (left_n as f64 * gini2(left_neg, left_pos)
                + right_n as f64 * gini2(right_neg, right_pos))
                / n as f64;
            let threshold = (column[i].0 + column[i + 1].0) / 2.0;
            if best.as_ref().is_none_or(|b| impurity < b.impurity) {
                best = Some(BestSplit {
                    feature: f,
                    threshold,
                    impurity,
                });
            }
        }
    }
    best
}

/// Per-node source of candidate feature indices. The plain tree always
/// offers every feature; the forest draws a random subset per split.
pub(super) trait FeaturePicker {
    fn pick(&mut self) -> Vec<usize>;
}

pub(super) struct AllFeatures(pub usize);

impl FeaturePicker for AllFeatures {
    fn pick(&mut self) -> Vec<usize> {
        (0..self.0).collect()
    }
}

pub(super) fn grow_tree(
    data: &[(&[f64], bool)],
    params: TreeParams,
    picker: &mut dyn FeaturePicker,
) -> Result<DecisionTree, ClassifierError> {
    if data.is_empty() {
        return Err(ClassifierError::EmptyDataset);
    }
    let feature_count = data[0].0.len();
    let mut nodes = Vec::new();
    let indices: Vec<usize> = (0..data.len()).collect();
    build_node(data, &indices, params, picker, 0, &mut nodes);
    Ok(DecisionTree {
        params,
        feature_count,
        nodes,
    })
}

fn class_counts(data: &[(&[f64], bool)], indices: &[usize]) -> [usize; 2] {
    let pos = indices.iter().filter(|&&i| data[i].1).count();
    [indices.len() - pos, pos]
}

fn build_node(
    data: &[(&[f64], bool)],
    indices: &[usize],
    params: TreeParams,
    picker: &mut dyn FeaturePicker,
    depth: usize,
    nodes: &mut Vec<Node>,
) -> usize {
    let counts = class_counts(data, indices);
    let node_index = nodes.len();
    nodes.push(Node::Leaf { counts });

    let pure = counts[0] == 0 || counts[1] == 0;
    let depth_stop = params.max_depth.is_some_and(|d| depth >= d);
    if pure || depth_stop || indices.len() < 2 * params.min_samples_leaf {
        return node_index;
    }
    let mut candidates = picker.pick();
    candidates.sort_unstable();
    candidates.dedup();
    let Some(split) = best_split(data, indices, &candidates, params.min_samples_leaf) else {
        return node_index;
    };

    let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
        .iter()
        .partition(|&&i| data[i].0[split.feature] <= split.threshold);
    let left = build_node(data, &left_idx, params, picker, depth + 1, nodes);
    let right = build_node(data, &right_idx, params, picker, depth + 1, nodes);
    nodes[node_index] = Node::Split {
        feature: split.feature,
        threshold: split.threshold,
        left,
        right,
    };
    node_index
}

/// Train a tree offering every feature at every split.
pub fn train_tree(
    data: &[(&[f64], bool)],
    params: TreeParams,
) -> Result<DecisionTree, ClassifierError> {
    let mut all = AllFeatures(data.first().map_or(0, |(x, _)| x.len()));
    grow_tree(data, params, &mut all)
}

impl DecisionTree {
    /// Positive-class probability at the leaf reached by `features`.
    pub fn score(&self, features: &[f64]) -> Result<f64, ClassifierError> {
        if features.len() != self.feature_count {
            return Err(ClassifierError::FeatureLengthMismatch {
                expected: self.feature_count,
                got: features.len(),
            });
        }
        let mut at = 0usize;
        loop {
            match &self.nodes[at] {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if features[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
                Node::Leaf { counts } => {
                    let total = counts[0] + counts[1];
                    return Ok(counts[1] as f64 / total as f64);
                }
            }
        }
    }

    /// Hard vote: positive when the leaf's positive share is >= 0.5
    /// (tie goes to positive).
    pub fn vote(&self, features: &[f64]) -> Result<bool, ClassifierError> {
        Ok(self.score(features)? >= 0.5)
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gini_reference_values() {
        assert_eq!(gini(&[10, 0]).unwrap(), 0.0);
        assert_eq!(gini(&[5, 5]).unwrap(), 0.5);
        assert!((gini(&[3, 1]).unwrap() - 0.375).abs() < 1e-12);
        assert!(matches!(gini(&[0, 0]), Err(ClassifierError::EmptyCounts)));
    }

    #[test]
    fn single_class_data_yields_single_leaf() {
        let a = [1.0];
        let b = [2.0];
        let data: Vec<(&[f64], bool)> = vec![(&a, true), (&b, true)];
        let tree = train_tree(&data, TreeParams::default()).unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert!(tree.vote(&[5.0]).unwrap());
    }

    #[test]
    fn separable_1d_data_splits_at_midpoint() {
        let xs: Vec<[f64; 1]> = vec![[0.0], [0.2], [0.4], [0.6], [0.8], [1.0]];
        let data: Vec<(&[f64], bool)> = xs.iter().map(|x| (x.as_slice(), x[0] > 0.5)).collect();
        let tree = train_tree(&data, TreeParams::default()).unwrap();
        assert_eq!(tree.depth(), 1);
        match &tree.nodes[0] {
            Node::Split {
                feature, threshold, ..
            } => {
                assert_eq!(*feature, 0);
                assert!((threshold - 0.5).abs() < 1e-12);
            }
            other => panic!("expected split at root, got {other:?}"),
        }
        assert!(!tree.vote(&[0.1]).unwrap());
        assert!(tree.vote(&[0.9]).unwrap());
    }

    #[test]
    fn conflicting_duplicates_get_majority_with_tie_positive() {
        let x = [1.0];
        let data: Vec<(&[f64], bool)> = vec![(&x, true), (&x, false), (&x, false)];
        let tree = train_tree(&data, TreeParams::default()).unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert!(!tree.vote(&[1.0]).unwrap());

        let tied: Vec<(&[f64], bool)> = vec![(&x, true), (&x, false)];
        let tree = train_tree(&tied, TreeParams::default()).unwrap();
        assert!(tree.vote(&[1.0]).unwrap(), "tie goes to positive");
    }

    #[test]
    fn duplicating_examples_leaves_structure_unchanged() {
        let xs: Vec<[f64; 2]> = vec![
            [0.1, 3.0],
            [0.4, 1.0],
            [0.7, 2.5],
            [0.9, 0.5],
            [0.3, 2.0],
            [0.8, 1.5],
        ];
        let data: Vec<(&[f64], bool)> = xs
            .iter()
            .map(|x| (x.as_slice(), x[0] + x[1] > 1.6))
            .collect();
        let mut doubled = data.clone();
        doubled.extend(data.iter().cloned());
        let a = train_tree(&data, TreeParams::default()).unwrap();
        let b = train_tree(&doubled, TreeParams::default()).unwrap();
        fn structure(nodes: &[Node]) -> Vec<(usize, f64)> {
            nodes
                .iter()
                .filter_map(|n| match n {
                    Node::Split {
                        feature, threshold, ..
                    } => Some((*feature, *threshold)),
                    Node::Leaf { .. } => None,
                })
                .collect()
        }
        assert_eq!(structure(&a.nodes), structure(&b.nodes));
    }

    #[test]
    fn empty_dataset_is_an_error() {
        let data: Vec<(&[f64], bool)> = Vec::new();
        assert!(matches!(
            train_tree(&data, TreeParams::default()),
            Err(ClassifierError::EmptyDataset)
        ));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let x = [1.0, 2.0];
        let data: Vec<(&[f64], bool)> = vec![(&x, true)];
        let tree = train_tree(&data, TreeParams::default()).unwrap();
        assert!(matches!(
            tree.score(&[1.0]),
            Err(ClassifierError::FeatureLengthMismatch {
                expected: 2,
                got: 1
            })
        ));
    }
}
