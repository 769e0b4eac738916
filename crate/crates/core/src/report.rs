//! Serialized analysis reports and the plot/spreadsheet side files.
//!
//! The JSON report keeps every float at full round-trip precision so the
//! total score can be re-derived exactly from the per-dimension rows. Human
//! facing text (stdout, scatter, CSV) uses six significant digits.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusConfig;
use crate::embedding_io::EmbeddingFormat;
use crate::error::{Error, Result};
use crate::mi::MiMode;
use crate::raam::{Level, RaamReport};
use crate::stats::RegressionFit;

pub const SCHEMA_VERSION: &str = "1";

/// Every knob that shaped a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knobs {
    pub embeddings: String,
    pub format: EmbeddingFormat,
    pub vocab_cap: Option<usize>,
    pub corpus: Vec<String>,
    pub sentence_cap: usize,
    pub min_tokens_in_vocab: usize,
    pub lowercase: bool,
    pub mi_mode: Option<MiMode>,
    pub bins: usize,
    pub mi_pair_cap: usize,
}

impl Knobs {
    pub fn corpus_config(&self) -> CorpusConfig {
        CorpusConfig {
            sentence_cap: self.sentence_cap,
            min_tokens_in_vocab: self.min_tokens_in_vocab,
            lowercase: self.lowercase,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub index: usize,
    pub word_entropy: f64,
    pub sentence_entropy: f64,
    pub word_entropy_norm: f64,
    pub sentence_entropy_norm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mi: Option<f64>,
    pub level: Level,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub knobs: Knobs,
    pub word_population: usize,
    pub sentence_population: usize,
    pub dimensions: usize,
    pub total_score: f64,
    pub word_level_count: usize,
    pub sentence_level_count: usize,
    pub fit: Option<RegressionFit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mi_pairs: Option<usize>,
    pub rows: Vec<DimensionRow>,
}

impl AnalysisReport {
    pub fn new(report: &RaamReport, knobs: Knobs) -> Self {
        let rows = report
            .profiles
            .iter()
            .map(|p| DimensionRow {
                index: p.index,
                word_entropy: p.word_entropy,
                sentence_entropy: p.sentence_entropy,
                word_entropy_norm: p.word_entropy_norm,
                sentence_entropy_norm: p.sentence_entropy_norm,
                mi: p.mi,
                level: p.level,
            })
            .collect();
        AnalysisReport {
            schema_version: SCHEMA_VERSION.to_string(),
            mi_pairs: knobs.mi_mode.map(|_| report.mi_pairs),
            knobs,
            word_population: report.word_population,
            sentence_population: report.sentence_population,
            dimensions: report.profiles.len(),
            total_score: report.total_score,
            word_level_count: report.word_level_count,
            sentence_level_count: report.sentence_level_count,
            fit: report.fit,
            rows,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks that the totals follow from the rows: the score is the
    /// index-order sum of row maxima and the level counts add up.
    pub fn verify(&self) -> Result<()> {
        if self.schema_version.is_empty() {
            return Err(Error::InvalidConfig("missing schema_version".into()));
        }
        if self.rows.len() != self.dimensions {
            return Err(Error::InvalidConfig(format!(
                "{} rows for {} dimensions",
                self.rows.len(),
                self.dimensions
            )));
        }
        let total: f64 = self
            .rows
            .iter()
            .map(|r| r.word_entropy.max(r.sentence_entropy))
            .sum();
        if total != self.total_score {
            return Err(Error::InvalidConfig(format!(
                "total_score {} but rows sum to {total}",
                self.total_score
            )));
        }
        let sentence = self
            .rows
            .iter()
            .filter(|r| r.level == Level::SentenceLevel)
            .count();
        if sentence != self.sentence_level_count
            || self.word_level_count + self.sentence_level_count != self.dimensions
        {
            return Err(Error::InvalidConfig("level counts disagree with rows".into()));
        }
        Ok(())
    }

    /// One `word_entropy sentence_entropy` line per dimension, no header.
    pub fn write_scatter<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.rows {
            writeln!(out, "{} {}", sig6(r.word_entropy), sig6(r.sentence_entropy))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "index",
            "word_entropy",
            "sentence_entropy",
            "word_entropy_norm",
            "sentence_entropy_norm",
            "mi",
            "level",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.index.to_string(),
                sig6(r.word_entropy),
                sig6(r.sentence_entropy),
                sig6(r.word_entropy_norm),
                sig6(r.sentence_entropy_norm),
                r.mi.map(sig6).unwrap_or_default(),
                level_name(r.level).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// The short plain-text summary printed by `raam analyze`.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "total_score {}\nword_level {}\nsentence_level {}\n",
            sig6(self.total_score),
            self.word_level_count,
            self.sentence_level_count
        );
        match &self.fit {
            Some(fit) => {
                let relation = if fit.slope < 0.0 { "negative" } else { "non-negative" };
                s.push_str(&format!(
                    "fit slope {} intercept {} r {} n {} ({relation})\n",
                    sig6(fit.slope),
                    sig6(fit.intercept),
                    sig6(fit.pearson_r),
                    fit.n
                ));
            }
            None => s.push_str("fit unavailable\n"),
        }
        s
    }
}

pub fn level_name(level: Level) -> &'static str {
    match level {
        Level::WordLevel => "word_level",
        Level::SentenceLevel => "sentence_level",
    }
}

/// Formats `x` with six significant digits, `%g` style.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    };
    trim_zeros(s)
}

fn trim_zeros(s: String) -> String {
    let (mantissa, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s.as_str(), ""),
    };
    if !mantissa.contains('.') {
        return s;
    }
    let m = mantissa.trim_end_matches('0').trim_end_matches('.');
    format!("{m}{exp}")
}
