//! Per-dimension entropies, the word/sentence level partition and the total
//! score.
//!
//! For every dimension `i`, the values of that dimension across a population
//! (all vocabulary rows, or all sentence vectors) are passed through a
//! Gaussian kernel centered on the population mean, normalized into a
//! distribution, and summarized by its Shannon entropy in nats. A dimension
//! whose sentence entropy strictly exceeds its word entropy is sentence
//! level; otherwise it is word level. The total score sums the larger of the
//! two entropies over all dimensions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::SentenceMatrix;
use crate::embedding_io::EmbeddingMatrix;
use crate::error::{check_same_len, Error, Result};
use crate::mi::{mutual_information, MiMode, DEFAULT_BINS};
use crate::stats::{ols_fit, RegressionFit};

/// Below this standard deviation a column is treated as constant.
pub const SIGMA_FLOOR: f64 = 1e-12;
pub const DEFAULT_MI_PAIR_CAP: usize = 500_000;
const DISTRIBUTION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionStats {
    pub mu: f64,
    /// Population standard deviation.
    pub sigma: f64,
}

pub fn dimension_stats(values: &[f64]) -> Result<DimensionStats> {
    if values.len() < 2 {
        return Err(Error::DegeneratePopulation {
            found: values.len(),
        });
    }
    // Welford
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (k, &v) in values.iter().enumerate() {
        let delta = v - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (v - mean);
    }
    Ok(DimensionStats {
        mu: mean,
        sigma: (m2.max(0.0) / values.len() as f64).sqrt(),
    })
}

/// Normalized Gaussian kernel weights `exp(-(v - mu)^2 / (2 sigma^2))`.
pub fn kernel_weights(values: &[f64], stats: &DimensionStats) -> Vec<f64> {
    if values.is_empty() {
        return Vec::new();
    }
    if stats.sigma < SIGMA_FLOOR {
        return vec![1.0 / values.len() as f64; values.len()];
    }
    let two_var = 2.0 * stats.sigma * stats.sigma;
    let mut w: Vec<f64> = values
        .iter()
        .map(|v| (-(v - stats.mu).powi(2) / two_var).exp())
        .collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

/// Shannon entropy `-sum w ln w` in nats, with `0 ln 0 = 0`.
pub fn dimension_entropy(weights: &[f64]) -> Result<f64> {
    if let Some(w) = weights.iter().find(|w| w.is_nan() || **w < 0.0) {
        return Err(Error::NotADistribution(format!("invalid weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > DISTRIBUTION_TOLERANCE {
        return Err(Error::NotADistribution(format!("weights sum to {total}")));
    }
    Ok(weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| -w * w.ln())
        .sum())
}

/// Kernel entropy of one population column, in `[0, ln n]`.
pub fn column_entropy(values: &[f64]) -> Result<f64> {
    let stats = dimension_stats(values)?;
    let max = (values.len() as f64).ln();
    if stats.sigma < SIGMA_FLOOR {
        return Ok(max);
    }
    let h = dimension_entropy(&kernel_weights(values, &stats))?;
    Ok(h.clamp(0.0, max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyProfiles {
    pub word: Vec<f64>,
    pub sentence: Vec<f64>,
}

fn column_entropies(rows: usize, dim: usize, column: impl Fn(usize) -> Vec<f64> + Sync) -> Result<Vec<f64>> {
    if rows < 2 {
        return Err(Error::DegeneratePopulation { found: rows });
    }
    (0..dim)
        .into_par_iter()
        .map(|i| column_entropy(&column(i)))
        .collect()
}

/// Word-level and sentence-level entropy of every dimension.
pub fn entropy_profiles(emb: &EmbeddingMatrix, sent: &SentenceMatrix) -> Result<EntropyProfiles> {
    if emb.dim() != sent.dim() {
        return Err(Error::IncompatibleDimensions {
            word_dim: emb.dim(),
            sentence_dim: sent.dim(),
        });
    }
    Ok(EntropyProfiles {
        word: column_entropies(emb.len(), emb.dim(), |i| emb.column(i))?,
        sentence: column_entropies(sent.len(), sent.dim(), |i| sent.column(i))?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    WordLevel,
    SentenceLevel,
}

/// Sentence level iff the sentence entropy is strictly larger.
pub fn partition_dimensions(word: &[f64], sentence: &[f64]) -> Result<Vec<Level>> {
    check_same_len(word.len(), sentence.len())?;
    Ok(word
        .iter()
        .zip(sentence)
        .map(|(w, s)| {
            if s > w {
                Level::SentenceLevel
            } else {
                Level::WordLevel
            }
        })
        .collect())
}

/// Sum over dimensions of the larger of the two entropies.
pub fn raam_score(word: &[f64], sentence: &[f64]) -> Result<f64> {
    check_same_len(word.len(), sentence.len())?;
    if word.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(word.iter().zip(sentence).map(|(w, s)| w.max(*s)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// `None` skips mutual information entirely.
    pub mi_mode: Option<MiMode>,
    pub bins: usize,
    /// Maximum number of (word occurrence, sentence) pairs fed to the MI
    /// estimator, taken in corpus order.
    pub mi_pair_cap: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            mi_mode: Some(MiMode::Histogram),
            bins: DEFAULT_BINS,
            mi_pair_cap: DEFAULT_MI_PAIR_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionProfile {
    pub index: usize,
    pub word_entropy: f64,
    pub sentence_entropy: f64,
    pub word_entropy_norm: f64,
    pub sentence_entropy_norm: f64,
    pub mi: Option<f64>,
    pub level: Level,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaamReport {
    pub total_score: f64,
    pub profiles: Vec<DimensionProfile>,
    pub word_level_count: usize,
    pub sentence_level_count: usize,
    /// Regression of sentence entropy on word entropy across dimensions.
    /// Absent when there are fewer than two dimensions or the word
    /// entropies are all equal.
    pub fit: Option<RegressionFit>,
    pub word_population: usize,
    pub sentence_population: usize,
    pub mi_pairs: usize,
    pub config: AnalysisConfig,
}

fn occurrence_mi(
    emb: &EmbeddingMatrix,
    sent: &SentenceMatrix,
    sentence_entropy: &[f64],
    mode: MiMode,
    cfg: &AnalysisConfig,
) -> Result<(Vec<f64>, usize)> {
    let pairs: Vec<(usize, usize)> = sent.occurrences().take(cfg.mi_pair_cap).collect();
    let mi = (0..emb.dim())
        .into_par_iter()
        .map(|i| {
            let word_vals: Vec<f64> = pairs.iter().map(|&(w, _)| emb.row(w)[i]).collect();
            let sent_vals: Vec<f64> = pairs.iter().map(|&(_, s)| sent.row(s)[i]).collect();
            mutual_information(&word_vals, &sent_vals, mode, sentence_entropy[i], cfg.bins)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((mi, pairs.len()))
}

/// Runs the full per-dimension analysis.
pub fn analyze(
    emb: &EmbeddingMatrix,
    sent: &SentenceMatrix,
    cfg: &AnalysisConfig,
) -> Result<RaamReport> {
    let profiles = entropy_profiles(emb, sent)?;
    let levels = partition_dimensions(&profiles.word, &profiles.sentence)?;
    let total_score = raam_score(&profiles.word, &profiles.sentence)?;
    let (mi, mi_pairs) = match cfg.mi_mode {
        Some(mode) => {
            let (values, pairs) = occurrence_mi(emb, sent, &profiles.sentence, mode, cfg)?;
            (values.into_iter().map(Some).collect(), pairs)
        }
        None => (vec![None; emb.dim()], 0),
    };

    let ln_words = (emb.len() as f64).ln();
    let ln_sents = (sent.len() as f64).ln();
    let dims: Vec<DimensionProfile> = (0..emb.dim())
        .map(|i| DimensionProfile {
            index: i,
            word_entropy: profiles.word[i],
            sentence_entropy: profiles.sentence[i],
            word_entropy_norm: profiles.word[i] / ln_words,
            sentence_entropy_norm: profiles.sentence[i] / ln_sents,
            mi: mi[i],
            level: levels[i],
        })
        .collect();
    let sentence_level_count = levels.iter().filter(|l| **l == Level::SentenceLevel).count();

    Ok(RaamReport {
        total_score,
        profiles: dims,
        word_level_count: levels.len() - sentence_level_count,
        sentence_level_count,
        fit: ols_fit(&profiles.word, &profiles.sentence).ok(),
        word_population: emb.len(),
        sentence_population: sent.len(),
        mi_pairs,
        config: *cfg,
    })
}
