//! Coherence-driven topic-number sweep. Each grid point is fitted with
//! several seeds and scored by mean UCI coherence; the argmax is selected,
//! but the full curve is emitted so a human may override the choice.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coherence::{uci_coherence, CoherenceParams};
use super::lda::{lda_fit, LdaParams};
use super::preprocess::TokenizedCorpus;
use super::TopicsError;
use crate::classifier::mix_seed;

/// The default sweep grid: 2, 8, 14, 20, 26, 32, 38.
pub fn default_grid() -> Vec<usize> {
    grid(2, 6, 40)
}

/// Topic counts from `start` in steps of `step`, not exceeding `max`.
pub fn grid(start: usize, step: usize, max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = start;
    while k <= max {
        out.push(k);
        k += step.max(1);
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepPoint {
    pub k: usize,
    pub mean_coherence: f64,
    pub per_seed: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    /// Argmax-coherence grid point (ties take the smaller K). Advisory: the
    /// curve is reported so selection can be overridden.
    pub selected_k: usize,
}

/// Fit every grid point with `seeds_per_k` chains and score each by UCI
/// coherence. Grid points are independent jobs and run concurrently;
/// per-chain seeds derive from (base_seed, K, chain), so results do not
/// depend on scheduling.
pub fn sweep_topic_numbers(
    corpus: &TokenizedCorpus,
    grid: &[usize],
    seeds_per_k: usize,
    lda: &LdaParams,
    coherence: &CoherenceParams,
    base_seed: u64,
) -> Result<SweepResult, TopicsError> {
    if grid.is_empty() {
        return Err(TopicsError::EmptyGrid);
    }
    if !grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(TopicsError::GridNotIncreasing);
    }
    if seeds_per_k == 0 {
        return Err(TopicsError::NoSeeds);
    }
    let jobs: Vec<(usize, usize)> = grid
        .iter()
        .flat_map(|&k| (0..seeds_per_k).map(move |s| (k, s)))
        .collect();
    let scores: Result<Vec<f64>, TopicsError> = jobs
        .par_iter()
        .map(|&(k, chain)| {
            let seed = mix_seed(base_seed, (k as u64) << 16 | chain as u64);
            let model = lda_fit(corpus, k, lda, seed)?;
            uci_coherence(&model, corpus, coherence)
        })
        .collect();
    let scores = scores?;

    let mut points = Vec::with_capacity(grid.len());
    for (gi, &k) in grid.iter().enumerate() {
        let per_seed: Vec<f64> = scores[gi * seeds_per_k..(gi + 1) * seeds_per_k].to_vec();
        let mean = per_seed.iter().sum::<f64>() / per_seed.len() as f64;
        points.push(SweepPoint {
            k,
            mean_coherence: mean,
            per_seed,
        });
    }
    let selected_k = points
        .iter()
        .max_by(|a, b| {
            a.mean_coherence
                .total_cmp(&b.mean_coherence)
                .then_with(|| b.k.cmp(&a.k))
        })
        .map(|p| p.k)
        .expect("non-empty grid");
    Ok(SweepResult { points, selected_k })
}
