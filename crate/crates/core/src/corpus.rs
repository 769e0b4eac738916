//! Sentence segmentation and sentence-vector construction.

use serde::{Deserialize, Serialize};

use crate::embedding_io::EmbeddingMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_SENTENCE_CAP: usize = 100_000;
pub const DEFAULT_MIN_TOKENS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub sentence_cap: usize,
    /// Sentences with fewer in-vocabulary tokens are dropped.
    pub min_tokens_in_vocab: usize,
    pub lowercase: bool,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            sentence_cap: DEFAULT_SENTENCE_CAP,
            min_tokens_in_vocab: DEFAULT_MIN_TOKENS,
            lowercase: false,
        }
    }
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sentence_cap < 2 {
            return Err(Error::InvalidConfig(format!(
                "sentence_cap must be at least 2, got {}",
                self.sentence_cap
            )));
        }
        if self.min_tokens_in_vocab < 1 {
            return Err(Error::InvalidConfig(
                "min_tokens_in_vocab must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Sentence vectors, `m x l` row-major, plus the embedding rows of the
/// in-vocabulary token occurrences behind each sentence.
#[derive(Debug, Clone)]
pub struct SentenceMatrix {
    values: Vec<f64>,
    dim: usize,
    members: Vec<Vec<usize>>,
}

impl SentenceMatrix {
    /// Builds a matrix from raw sentence vectors. No occurrence information
    /// is attached, so occurrence-paired statistics are unavailable.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let members = vec![Vec::new(); rows.len()];
        let mut values = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    line: i + 1,
                    expected: dim,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        SentenceMatrix::with_members(values, dim, members)
    }

    fn with_members(values: Vec<f64>, dim: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        if members.len() < 2 {
            return Err(Error::InsufficientSentences {
                found: members.len(),
            });
        }
        if dim == 0 {
            return Err(Error::InvalidConfig("sentence vectors are empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("non-finite sentence value".into()));
        }
        Ok(SentenceMatrix {
            values,
            dim,
            members,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    pub fn column(&self, dim: usize) -> Vec<f64> {
        self.rows().map(|r| r[dim]).collect()
    }

    /// Embedding row indices of the in-vocabulary tokens of sentence `row`,
    /// in token order (repeats included).
    pub fn members(&self, row: usize) -> &[usize] {
        &self.members[row]
    }

    /// `(word row, sentence row)` for every token occurrence, corpus order.
    pub fn occurrences(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.members
            .iter()
            .enumerate()
            .flat_map(|(s, words)| words.iter().map(move |&w| (w, s)))
    }
}

fn is_punct(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '\u{2018}' | '\u{2019}' | '\u{201C}' | '\u{201D}' | '\u{00AB}' | '\u{00BB}'
                | '\u{2013}' | '\u{2014}' | '\u{2026}'
        )
}

/// Splits text into sentences on `.`, `!`, `?` and newlines, then into
/// whitespace tokens with surrounding punctuation stripped.
pub fn segment_sentences(text: &str, lowercase: bool) -> Vec<Vec<String>> {
    text.split(['.', '!', '?', '\n'])
        .map(|sentence| {
            sentence
                .split_whitespace()
                .map(|tok| tok.trim_matches(is_punct))
                .filter(|tok| !tok.is_empty())
                .map(|tok| {
                    if lowercase {
                        tok.to_lowercase()
                    } else {
                        tok.to_string()
                    }
                })
                .collect::<Vec<_>>()
        })
        .filter(|tokens| !tokens.is_empty())
        .collect()
}

fn in_vocab_rows<S: AsRef<str>>(tokens: &[S], emb: &EmbeddingMatrix) -> Vec<usize> {
    tokens
        .iter()
        .filter_map(|t| emb.index_of(t.as_ref()))
        .collect()
}

fn mean_of_rows(rows: &[usize], emb: &EmbeddingMatrix) -> Vec<f64> {
    let mut acc = vec![0.0; emb.dim()];
    for &r in rows {
        for (a, v) in acc.iter_mut().zip(emb.row(r)) {
            *a += v;
        }
    }
    let n = rows.len() as f64;
    acc.iter_mut().for_each(|a| *a /= n);
    acc
}

/// Mean of the embedding rows of the in-vocabulary tokens, or `None` when
/// fewer than `min_tokens_in_vocab` tokens are known.
pub fn sentence_vector<S: AsRef<str>>(
    tokens: &[S],
    emb: &EmbeddingMatrix,
    min_tokens_in_vocab: usize,
) -> Option<Vec<f64>> {
    let rows = in_vocab_rows(tokens, emb);
    if rows.is_empty() || rows.len() < min_tokens_in_vocab {
        return None;
    }
    Some(mean_of_rows(&rows, emb))
}

/// Segments `text` and keeps the first `sentence_cap` sentence vectors in
/// corpus order.
pub fn build_sentence_matrix(
    text: &str,
    emb: &EmbeddingMatrix,
    cfg: &CorpusConfig,
) -> Result<SentenceMatrix> {
    cfg.validate()?;
    let mut values = Vec::new();
    let mut members = Vec::new();
    for tokens in segment_sentences(text, cfg.lowercase) {
        if members.len() == cfg.sentence_cap {
            break;
        }
        let rows = in_vocab_rows(&tokens, emb);
        if rows.is_empty() || rows.len() < cfg.min_tokens_in_vocab {
            continue;
        }
        values.extend(mean_of_rows(&rows, emb));
        members.push(rows);
    }
    SentenceMatrix::with_members(values, emb.dim(), members)
}
