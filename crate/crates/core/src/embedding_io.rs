//! Word-embedding matrices and their plain-text file formats.
//!
//! Two line-oriented formats are supported. GloVe text has one record per
//! line, `word v1 v2 ... vl`, fields separated by single ASCII spaces.
//! Word2vec text is the same with a leading `count dim` header line.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_VOCAB_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingFormat {
    Word2VecText,
    GloveText,
}

impl std::str::FromStr for EmbeddingFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "word2vec-text" => Ok(EmbeddingFormat::Word2VecText),
            "glove-text" => Ok(EmbeddingFormat::GloveText),
            other => Err(format!("unknown embedding format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    /// A repeated word is a [`Error::DuplicateWord`].
    #[default]
    Error,
    /// Keep the first occurrence, skip later ones.
    KeepFirst,
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Keep at most this many rows, in file order. `None` reads everything.
    pub vocab_cap: Option<usize>,
    pub duplicates: DuplicatePolicy,
    pub source_label: String,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            vocab_cap: Some(DEFAULT_VOCAB_CAP),
            duplicates: DuplicatePolicy::Error,
            source_label: String::new(),
        }
    }
}

/// A vocabulary together with its `n x l` row-major value matrix.
///
/// Immutable once built; the constructor enforces that words are unique and
/// nonempty, every value is finite, `n >= 2` and `l >= 1`.
#[derive(Debug, Clone)]
pub struct EmbeddingMatrix {
    vocab: Vec<String>,
    values: Vec<f64>,
    dim: usize,
    source_label: String,
    index: HashMap<String, usize>,
}

impl EmbeddingMatrix {
    pub fn new(
        vocab: Vec<String>,
        values: Vec<f64>,
        dim: usize,
        source_label: impl Into<String>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if vocab.len() < 2 {
            return Err(Error::InvalidMatrix(format!(
                "{} words, need at least 2",
                vocab.len()
            )));
        }
        if values.len() != vocab.len() * dim {
            return Err(Error::InvalidMatrix(format!(
                "{} values for {} words of dimension {dim}",
                values.len(),
                vocab.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite value in row {}",
                pos / dim
            )));
        }
        let mut index = HashMap::with_capacity(vocab.len());
        for (row, word) in vocab.iter().enumerate() {
            if word.is_empty() {
                return Err(Error::InvalidMatrix(format!("empty word at row {row}")));
            }
            if index.insert(word.clone(), row).is_some() {
                return Err(Error::InvalidMatrix(format!("duplicate word {word:?}")));
            }
        }
        Ok(EmbeddingMatrix {
            vocab,
            values,
            dim,
            source_label: source_label.into(),
            index,
        })
    }

    /// Builds a matrix from `(word, vector)` rows.
    pub fn from_rows<S: Into<String>>(
        rows: impl IntoIterator<Item = (S, Vec<f64>)>,
        source_label: impl Into<String>,
    ) -> Result<Self> {
        let mut vocab = Vec::new();
        let mut values = Vec::new();
        let mut dim = None;
        for (word, row) in rows {
            let expected = *dim.get_or_insert(row.len());
            if row.len() != expected {
                return Err(Error::DimensionMismatch {
                    line: vocab.len() + 1,
                    expected,
                    found: row.len(),
                });
            }
            vocab.push(word.into());
            values.extend(row);
        }
        EmbeddingMatrix::new(vocab, values, dim.unwrap_or(0), source_label)
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
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

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.index_of(word).map(|i| self.row(i))
    }
}

/// Parses a GloVe or word2vec text stream.
///
/// Trailing spaces and a trailing `\r` on each line are ignored, as are
/// blank lines. The dimension comes from the word2vec header, or from the
/// first record for GloVe files.
pub fn parse_embeddings<R: BufRead>(
    reader: R,
    format: EmbeddingFormat,
    opts: &ParseOptions,
) -> Result<EmbeddingMatrix> {
    let cap = opts.vocab_cap.unwrap_or(usize::MAX);
    let mut vocab: Vec<String> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut dim: Option<usize> = None;
    let mut declared_rows: Option<usize> = None;
    let mut expect_header = format == EmbeddingFormat::Word2VecText;
    let mut truncated = false;
    let mut any_content = false;

    for (idx, raw) in reader.split(b'\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw?;
        let line = std::str::from_utf8(&raw).map_err(|_| Error::InvalidUtf8 { line: line_no })?;
        let line = line.trim_end_matches(['\r', ' ']);
        if line.is_empty() {
            continue;
        }
        any_content = true;

        if expect_header {
            expect_header = false;
            let (rows, d) = parse_header(line).ok_or_else(|| Error::MalformedHeader {
                line: line_no,
                header: line.to_string(),
            })?;
            declared_rows = Some(rows);
            dim = Some(d);
            continue;
        }

        if vocab.len() >= cap {
            truncated = true;
            break;
        }

        let mut fields = line.split(' ');
        let word = fields.next().unwrap_or_default();
        if word.is_empty() {
            return Err(Error::EmptyWord { line: line_no });
        }
        let start = values.len();
        for token in fields {
            let v: f64 = token.parse().map_err(|_| Error::MalformedNumber {
                line: line_no,
                token: token.to_string(),
            })?;
            if !v.is_finite() {
                return Err(Error::NonFiniteValue {
                    line: line_no,
                    token: token.to_string(),
                });
            }
            values.push(v);
        }
        let found = values.len() - start;
        let expected = *dim.get_or_insert(found);
        if found != expected || found == 0 {
            return Err(Error::DimensionMismatch {
                line: line_no,
                expected,
                found,
            });
        }

        if seen.contains_key(word) {
            match opts.duplicates {
                DuplicatePolicy::Error => {
                    return Err(Error::DuplicateWord {
                        line: line_no,
                        word: word.to_string(),
                    })
                }
                DuplicatePolicy::KeepFirst => {
                    values.truncate(start);
                    continue;
                }
            }
        }
        seen.insert(word.to_string(), vocab.len());
        vocab.push(word.to_string());
    }

    if !any_content {
        return Err(Error::EmptyFile);
    }
    if let Some(declared) = declared_rows {
        // KeepFirst may legitimately leave fewer rows than declared.
        let short = vocab.len() < declared && opts.duplicates == DuplicatePolicy::Error;
        if !truncated && (short || vocab.len() > declared) {
            return Err(Error::HeaderCountMismatch {
                declared,
                found: vocab.len(),
            });
        }
    }
    EmbeddingMatrix::new(vocab, values, dim.unwrap_or(0), opts.source_label.clone())
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_ascii_whitespace();
    let rows = it.next()?.parse().ok()?;
    let dim: usize = it.next()?.parse().ok()?;
    if it.next().is_some() || dim == 0 {
        return None;
    }
    Some((rows, dim))
}

/// Writes `m` in the given text format.
///
/// Values use the shortest representation that parses back to the same
/// `f64`, so a write/parse round trip is lossless.
pub fn write_embeddings<W: Write>(
    m: &EmbeddingMatrix,
    format: EmbeddingFormat,
    mut out: W,
) -> Result<()> {
    if m.len() < 2 || m.dim() == 0 {
        return Err(Error::InvalidMatrix(format!(
            "refusing to write {} x {} matrix",
            m.len(),
            m.dim()
        )));
    }
    if format == EmbeddingFormat::Word2VecText {
        writeln!(out, "{} {}", m.len(), m.dim())?;
    }
    for (word, row) in m.vocab().iter().zip(m.rows()) {
        if word.contains([' ', '\n']) {
            return Err(Error::InvalidMatrix(format!(
                "word {word:?} contains a separator"
            )));
        }
        out.write_all(word.as_bytes())?;
        for v in row {
            write!(out, " {v:?}")?;
        }
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}
