use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit can report.
///
/// Each variant maps to a stable snake_case code (see [`Error::code`]) that the
/// CLI prints as a machine-parsable prefix.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected {expected} values, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate word {word:?}")]
    DuplicateWord { line: usize, word: String },
    #[error("line {line}: malformed number {token:?}")]
    MalformedNumber { line: usize, token: String },
    #[error("line {line}: non-finite value {token:?}")]
    NonFiniteValue { line: usize, token: String },
    #[error("line {line}: empty word")]
    EmptyWord { line: usize },
    #[error("line {line}: malformed header {header:?}, expected \"<count> <dim>\"")]
    MalformedHeader { line: usize, header: String },
    #[error("header declares {declared} rows, file has {found}")]
    HeaderCountMismatch { declared: usize, found: usize },
    #[error("line {line}: invalid UTF-8")]
    InvalidUtf8 { line: usize },
    #[error("empty file")]
    EmptyFile,
    #[error("invalid embedding matrix: {0}")]
    InvalidMatrix(String),

    #[error("only {found} sentence vectors retained, need at least 2")]
    InsufficientSentences { found: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("population of {found} values, need at least 2")]
    DegeneratePopulation { found: usize },
    #[error("weights do not form a probability distribution: {0}")]
    NotADistribution(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{found} samples, need at least {needed}")]
    InsufficientSamples { needed: usize, found: usize },
    #[error("dimension mismatch: embeddings have {word_dim} dimensions, sentences have {sentence_dim}")]
    IncompatibleDimensions {
        word_dim: usize,
        sentence_dim: usize,
    },
    #[error("input has zero variance")]
    ZeroVariance,
    #[error("empty input")]
    EmptyInput,

    #[error("zero vector")]
    ZeroVector,
    #[error("line {line}: malformed record: {reason}")]
    MalformedRecord { line: u64, reason: String },
    #[error("dataset has no pairs")]
    EmptyDataset,
    #[error("only {evaluated} of {total} pairs are in vocabulary, need at least 2")]
    InsufficientCoverage { evaluated: usize, total: usize },
    #[error("task {0:?} not found in score table")]
    MissingTask(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DuplicateWord { .. } => "duplicate_word",
            Error::MalformedNumber { .. } => "malformed_number",
            Error::NonFiniteValue { .. } => "non_finite_value",
            Error::EmptyWord { .. } => "empty_word",
            Error::MalformedHeader { .. } => "malformed_header",
            Error::HeaderCountMismatch { .. } => "header_count_mismatch",
            Error::InvalidUtf8 { .. } => "invalid_utf8",
            Error::EmptyFile => "empty_file",
            Error::InvalidMatrix(_) => "invalid_matrix",
            Error::InsufficientSentences { .. } => "insufficient_sentences",
            Error::InvalidConfig(_) => "invalid_config",
            Error::DegeneratePopulation { .. } => "degenerate_population",
            Error::NotADistribution(_) => "not_a_distribution",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::InsufficientSamples { .. } => "insufficient_samples",
            Error::IncompatibleDimensions { .. } => "incompatible_dimensions",
            Error::ZeroVariance => "zero_variance",
            Error::EmptyInput => "empty_input",
            Error::ZeroVector => "zero_vector",
            Error::MalformedRecord { .. } => "malformed_record",
            Error::EmptyDataset => "empty_dataset",
            Error::InsufficientCoverage { .. } => "insufficient_coverage",
            Error::MissingTask(_) => "missing_task",
            Error::Io(_) => "io_failure",
            Error::Csv(_) => "csv_failure",
            Error::Json(_) => "json_failure",
        }
    }
}

pub(crate) fn check_same_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}
