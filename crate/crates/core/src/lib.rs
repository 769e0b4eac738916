//! Entropy-based interpretation and scoring of word-embedding spaces.
//!
//! Each embedding dimension gets two attributes: its entropy across the
//! vocabulary (word level) and across sentence vectors built from a corpus
//! (sentence level). Dimensions are split by which attribute dominates, and
//! the total score sums the dominant entropy over all dimensions. Around
//! that core sit embedding file I/O, corpus processing, correlation
//! statistics, word-similarity benchmarks and a command-line front end.

pub mod benchmark;
pub mod cli;
pub mod corpus;
pub mod embedding_io;
pub mod error;
pub mod mi;
pub mod raam;
pub mod report;
pub mod stats;

pub use benchmark::{
    correlate_models, cosine_similarity, evaluate_similarity, load_pairs, Delimiter, ScoreRow,
    ScoreTable, SimilarityDataset, SimilarityResult, WordPair,
};
pub use corpus::{
    build_sentence_matrix, segment_sentences, sentence_vector, CorpusConfig, SentenceMatrix,
};
pub use embedding_io::{
    parse_embeddings, write_embeddings, DuplicatePolicy, EmbeddingFormat, EmbeddingMatrix,
    ParseOptions,
};
pub use error::{Error, Result};
pub use mi::{mutual_information, MiMode};
pub use raam::{
    analyze, dimension_entropy, dimension_stats, entropy_profiles, kernel_weights,
    partition_dimensions, raam_score, AnalysisConfig, DimensionProfile, DimensionStats,
    EntropyProfiles, Level, RaamReport,
};
pub use report::AnalysisReport;
pub use stats::{ols_fit, pearson, spearman, RegressionFit};
