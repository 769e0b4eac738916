//! The `raam` command line.
//!
//! Exit codes: 0 on success, 1 on a runtime or domain error (printed as a
//! single `error[<code>]: <message>` line), 2 on argument misuse.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::benchmark::{
    correlate_models, evaluate_similarity, load_pairs, Delimiter, ScoreTable, SimilarityResult,
};
use crate::corpus::{build_sentence_matrix, DEFAULT_MIN_TOKENS, DEFAULT_SENTENCE_CAP};
use crate::embedding_io::{
    parse_embeddings, EmbeddingFormat, EmbeddingMatrix, ParseOptions, DEFAULT_VOCAB_CAP,
};
use crate::error::Result;
use crate::mi::{MiMode, DEFAULT_BINS};
use crate::raam::{analyze, AnalysisConfig, DEFAULT_MI_PAIR_CAP};
use crate::report::{sig6, AnalysisReport, Knobs};

#[derive(Debug, Parser)]
#[command(name = "raam", version, about = "Entropy-based analysis of word-embedding dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    #[value(name = "word2vec-text")]
    Word2VecText,
    #[value(name = "glove-text")]
    GloveText,
}

impl From<FormatArg> for EmbeddingFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Word2VecText => EmbeddingFormat::Word2VecText,
            FormatArg::GloveText => EmbeddingFormat::GloveText,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MiArg {
    Histogram,
    PaperLiteral,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DelimiterArg {
    Auto,
    Comma,
    Tab,
}

#[derive(Debug, clap::Args)]
struct EmbeddingArgs {
    #[arg(long, value_name = "PATH")]
    embeddings: PathBuf,
    #[arg(long, value_enum)]
    format: FormatArg,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_VOCAB_CAP,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    vocab_cap: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-dimension word/sentence entropies, partition and total score.
    Analyze {
        #[command(flatten)]
        emb: EmbeddingArgs,
        /// Corpus text file; repeat to concatenate several in order.
        #[arg(long, value_name = "PATH", required = true)]
        corpus: Vec<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_SENTENCE_CAP)]
        sentence_cap: usize,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MIN_TOKENS)]
        min_tokens: usize,
        #[arg(long)]
        lowercase: bool,
        #[arg(long, value_enum, default_value_t = MiArg::Histogram)]
        mi: MiArg,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MI_PAIR_CAP)]
        mi_pair_cap: usize,
        /// JSON report destination.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Headerless two-column (word entropy, sentence entropy) file.
        #[arg(long, value_name = "PATH")]
        scatter: Option<PathBuf>,
        /// Per-dimension rows as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Word-similarity benchmarks by cosine similarity.
    Simeval {
        #[command(flatten)]
        emb: EmbeddingArgs,
        #[arg(long, value_name = "PATH", required = true)]
        pairs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = DelimiterArg::Auto)]
        delimiter: DelimiterArg,
        /// Pair files start with a header row.
        #[arg(long)]
        header: bool,
        #[arg(long)]
        lowercase: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Pearson correlation between RAAM scores and task scores.
    Correlate {
        #[arg(long, value_name = "PATH")]
        scores: PathBuf,
        #[arg(long, value_name = "NAME", required = true)]
        task: Vec<String>,
    },
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "error[{}]: {msg}", e.code());
            1
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Analyze {
            emb,
            corpus,
            sentence_cap,
            min_tokens,
            lowercase,
            mi,
            bins,
            mi_pair_cap,
            out,
            scatter,
            csv,
        } => {
            let mi = match mi {
                MiArg::Histogram => Some(MiMode::Histogram),
                MiArg::PaperLiteral => Some(MiMode::PaperLiteral),
                MiArg::Off => None,
            };
            let knobs = Knobs {
                embeddings: emb.embeddings.display().to_string(),
                format: emb.format.into(),
                vocab_cap: Some(emb.vocab_cap),
                corpus: corpus.iter().map(|p| p.display().to_string()).collect(),
                sentence_cap,
                min_tokens_in_vocab: min_tokens,
                lowercase,
                mi_mode: mi,
                bins,
                mi_pair_cap,
            };
            cmd_analyze(&emb, &corpus, knobs, out, scatter, csv, stdout)
        }
        Command::Simeval {
            emb,
            pairs,
            delimiter,
            header,
            lowercase,
            out,
        } => {
            let delimiter = match delimiter {
                DelimiterArg::Auto => Delimiter::Auto,
                DelimiterArg::Comma => Delimiter::Comma,
                DelimiterArg::Tab => Delimiter::Tab,
            };
            cmd_simeval(&emb, &pairs, delimiter, header, lowercase, out, stdout)
        }
        Command::Correlate { scores, task } => cmd_correlate(&scores, &task, stdout),
    }
}

fn load_embeddings(args: &EmbeddingArgs) -> Result<EmbeddingMatrix> {
    let file = File::open(&args.embeddings)?;
    let opts = ParseOptions {
        vocab_cap: Some(args.vocab_cap),
        source_label: file_label(&args.embeddings),
        ..ParseOptions::default()
    };
    parse_embeddings(BufReader::new(file), args.format.into(), &opts)
}

fn file_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn cmd_analyze(
    emb_args: &EmbeddingArgs,
    corpus: &[PathBuf],
    knobs: Knobs,
    out: Option<PathBuf>,
    scatter: Option<PathBuf>,
    csv: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let emb = load_embeddings(emb_args)?;
    let mut text = String::new();
    for path in corpus {
        text.push_str(&std::fs::read_to_string(path)?);
        text.push('\n');
    }
    let sentences = build_sentence_matrix(&text, &emb, &knobs.corpus_config())?;
    let cfg = AnalysisConfig {
        mi_mode: knobs.mi_mode,
        bins: knobs.bins,
        mi_pair_cap: knobs.mi_pair_cap,
    };
    let report = AnalysisReport::new(&analyze(&emb, &sentences, &cfg)?, knobs);

    if let Some(path) = out {
        create(&path)?.write_all(report.to_json()?.as_bytes())?;
    }
    if let Some(path) = scatter {
        report.write_scatter(create(&path)?)?;
    }
    if let Some(path) = csv {
        report.write_csv(create(&path)?)?;
    }
    stdout.write_all(report.summary().as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct SimevalOutput {
    embeddings: String,
    results: Vec<SimilarityResult>,
}

fn cmd_simeval(
    emb_args: &EmbeddingArgs,
    pairs: &[PathBuf],
    delimiter: Delimiter,
    header: bool,
    lowercase: bool,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let emb = load_embeddings(emb_args)?;
    let mut results = Vec::with_capacity(pairs.len());
    for path in pairs {
        let ds = load_pairs(File::open(path)?, file_label(path), delimiter, header)?;
        results.push(evaluate_similarity(&emb, &ds, lowercase)?);
    }
    writeln!(stdout, "dataset\tspearman\tpearson\tcoverage")?;
    for r in &results {
        writeln!(
            stdout,
            "{}\t{}\t{}\t{} ({}/{})",
            r.dataset,
            sig6(r.spearman),
            sig6(r.pearson),
            sig6(r.coverage),
            r.evaluated,
            r.total
        )?;
    }
    if let Some(path) = out {
        let payload = SimevalOutput {
            embeddings: emb_args.embeddings.display().to_string(),
            results,
        };
        let mut w = create(&path)?;
        serde_json::to_writer_pretty(&mut w, &payload)?;
        w.write_all(b"\n")?;
        w.flush()?;
    }
    Ok(())
}

fn cmd_correlate(scores: &Path, tasks: &[String], stdout: &mut dyn Write) -> Result<()> {
    let table = ScoreTable::from_csv(File::open(scores)?)?;
    let rs = tasks
        .iter()
        .map(|t| correlate_models(&table, t))
        .collect::<Result<Vec<f64>>>()?;
    for (task, r) in tasks.iter().zip(rs) {
        writeln!(stdout, "{task}\t{}", sig6(r))?;
    }
    Ok(())
}
