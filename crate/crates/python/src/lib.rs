//! Python bindings for the `raam` toolkit.

use std::fs::File;
use std::io::BufReader;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use raam::{
    AnalysisConfig, CorpusConfig, Delimiter, EmbeddingFormat, Level, MiMode, ParseOptions,
};

create_exception!(raam_py, RaamError, PyValueError);

fn err(e: raam::Error) -> PyErr {
    RaamError::new_err(format!("{}: {e}", e.code()))
}

fn to_py_object<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| err(e.into()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_format(format: &str) -> PyResult<EmbeddingFormat> {
    format.parse().map_err(PyValueError::new_err)
}

fn parse_mi(mode: &str) -> PyResult<Option<MiMode>> {
    match mode {
        "histogram" => Ok(Some(MiMode::Histogram)),
        "paper-literal" => Ok(Some(MiMode::PaperLiteral)),
        "off" => Ok(None),
        other => Err(PyValueError::new_err(format!("unknown mi mode {other:?}"))),
    }
}

fn level_name(level: Level) -> &'static str {
    match level {
        Level::WordLevel => "word_level",
        Level::SentenceLevel => "sentence_level",
    }
}

#[pyclass(name = "EmbeddingMatrix", module = "raam_py", frozen)]
struct PyEmbeddingMatrix {
    inner: raam::EmbeddingMatrix,
}

#[pymethods]
impl PyEmbeddingMatrix {
    #[staticmethod]
    #[pyo3(signature = (path, format = "glove-text", vocab_cap = Some(200_000), keep_first = false))]
    fn load(path: &str, format: &str, vocab_cap: Option<usize>, keep_first: bool) -> PyResult<Self> {
        let file = File::open(path).map_err(|e| err(e.into()))?;
        let opts = ParseOptions {
            vocab_cap,
            duplicates: if keep_first {
                raam::DuplicatePolicy::KeepFirst
            } else {
                raam::DuplicatePolicy::Error
            },
            source_label: path.to_string(),
        };
        let inner = raam::parse_embeddings(BufReader::new(file), parse_format(format)?, &opts)
            .map_err(err)?;
        Ok(PyEmbeddingMatrix { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (words, vectors, label = ""))]
    fn from_rows(words: Vec<String>, vectors: Vec<Vec<f64>>, label: &str) -> PyResult<Self> {
        if words.len() != vectors.len() {
            return Err(err(raam::Error::LengthMismatch {
                left: words.len(),
                right: vectors.len(),
            }));
        }
        let inner = raam::EmbeddingMatrix::from_rows(words.into_iter().zip(vectors), label)
            .map_err(err)?;
        Ok(PyEmbeddingMatrix { inner })
    }

    #[pyo3(signature = (path, format = "glove-text"))]
    fn save(&self, path: &str, format: &str) -> PyResult<()> {
        let file = File::create(path).map_err(|e| err(e.into()))?;
        raam::write_embeddings(&self.inner, parse_format(format)?, std::io::BufWriter::new(file))
            .map_err(err)
    }

    #[getter]
    fn vocab(&self) -> Vec<String> {
        self.inner.vocab().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn get(&self, word: &str) -> Option<Vec<f64>> {
        self.inner.get(word).map(<[f64]>::to_vec)
    }

    fn column(&self, index: usize) -> PyResult<Vec<f64>> {
        if index >= self.inner.dim() {
            return Err(PyValueError::new_err("dimension out of range"));
        }
        Ok(self.inner.column(index))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("EmbeddingMatrix({} x {})", self.inner.len(), self.inner.dim())
    }
}

#[pyclass(name = "SentenceMatrix", module = "raam_py", frozen)]
struct PySentenceMatrix {
    inner: raam::SentenceMatrix,
}

#[pymethods]
impl PySentenceMatrix {
    #[staticmethod]
    #[pyo3(signature = (text, emb, sentence_cap = 100_000, min_tokens = 3, lowercase = false))]
    fn build(
        text: &str,
        emb: &PyEmbeddingMatrix,
        sentence_cap: usize,
        min_tokens: usize,
        lowercase: bool,
    ) -> PyResult<Self> {
        let cfg = CorpusConfig {
            sentence_cap,
            min_tokens_in_vocab: min_tokens,
            lowercase,
        };
        let inner = raam::build_sentence_matrix(text, &emb.inner, &cfg).map_err(err)?;
        Ok(PySentenceMatrix { inner })
    }

    #[staticmethod]
    fn from_rows(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        let inner = raam::SentenceMatrix::from_rows(rows).map_err(err)?;
        Ok(PySentenceMatrix { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.inner.rows().map(<[f64]>::to_vec).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyfunction]
#[pyo3(signature = (text, lowercase = false))]
fn segment_sentences(text: &str, lowercase: bool) -> Vec<Vec<String>> {
    raam::segment_sentences(text, lowercase)
}

#[pyfunction]
#[pyo3(signature = (tokens, emb, min_tokens = 1))]
fn sentence_vector(tokens: Vec<String>, emb: &PyEmbeddingMatrix, min_tokens: usize) -> Option<Vec<f64>> {
    raam::sentence_vector(&tokens, &emb.inner, min_tokens)
}

#[pyfunction]
fn dimension_stats(values: Vec<f64>) -> PyResult<(f64, f64)> {
    let s = raam::dimension_stats(&values).map_err(err)?;
    Ok((s.mu, s.sigma))
}

#[pyfunction]
fn kernel_weights(values: Vec<f64>, mu: f64, sigma: f64) -> Vec<f64> {
    raam::kernel_weights(&values, &raam::DimensionStats { mu, sigma })
}

#[pyfunction]
fn dimension_entropy(weights: Vec<f64>) -> PyResult<f64> {
    raam::dimension_entropy(&weights).map_err(err)
}

#[pyfunction]
fn entropy_profiles(
    emb: &PyEmbeddingMatrix,
    sent: &PySentenceMatrix,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let p = raam::entropy_profiles(&emb.inner, &sent.inner).map_err(err)?;
    Ok((p.word, p.sentence))
}

#[pyfunction]
#[pyo3(signature = (word_vals, sent_vals, mode = "histogram", sent_entropy = 0.0, bins = 16))]
fn mutual_information(
    word_vals: Vec<f64>,
    sent_vals: Vec<f64>,
    mode: &str,
    sent_entropy: f64,
    bins: usize,
) -> PyResult<f64> {
    let mode = parse_mi(mode)?.ok_or_else(|| PyValueError::new_err("mode must not be off"))?;
    raam::mutual_information(&word_vals, &sent_vals, mode, sent_entropy, bins).map_err(err)
}

#[pyfunction]
fn partition_dimensions(word: Vec<f64>, sentence: Vec<f64>) -> PyResult<Vec<&'static str>> {
    let levels = raam::partition_dimensions(&word, &sentence).map_err(err)?;
    Ok(levels.into_iter().map(level_name).collect())
}

#[pyfunction]
fn raam_score(word: Vec<f64>, sentence: Vec<f64>) -> PyResult<f64> {
    raam::raam_score(&word, &sentence).map_err(err)
}

/// Full analysis; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (emb, sent, mi = "histogram", bins = 16, mi_pair_cap = 500_000))]
fn analyze<'py>(
    py: Python<'py>,
    emb: &PyEmbeddingMatrix,
    sent: &PySentenceMatrix,
    mi: &str,
    bins: usize,
    mi_pair_cap: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = AnalysisConfig {
        mi_mode: parse_mi(mi)?,
        bins,
        mi_pair_cap,
    };
    let report = raam::analyze(&emb.inner, &sent.inner, &cfg).map_err(err)?;
    to_py_object(py, &report)
}

#[pyfunction]
fn pearson(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    raam::pearson(&x, &y).map_err(err)
}

#[pyfunction]
fn spearman(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    raam::spearman(&x, &y).map_err(err)
}

#[pyfunction]
fn ols_fit<'py>(py: Python<'py>, x: Vec<f64>, y: Vec<f64>) -> PyResult<Bound<'py, PyAny>> {
    to_py_object(py, &raam::ols_fit(&x, &y).map_err(err)?)
}

#[pyfunction]
fn cosine_similarity(u: Vec<f64>, v: Vec<f64>) -> PyResult<f64> {
    raam::cosine_similarity(&u, &v).map_err(err)
}

/// Loads a pair file and evaluates it; returns the result as a dict.
#[pyfunction]
#[pyo3(signature = (emb, path, header = false, lowercase = false))]
fn evaluate_similarity<'py>(
    py: Python<'py>,
    emb: &PyEmbeddingMatrix,
    path: &str,
    header: bool,
    lowercase: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let file = File::open(path).map_err(|e| err(e.into()))?;
    let ds = raam::load_pairs(file, path, Delimiter::Auto, header).map_err(err)?;
    let result = raam::evaluate_similarity(&emb.inner, &ds, lowercase).map_err(err)?;
    to_py_object(py, &result)
}

/// Pearson r between the `raam` column and `task` of a score-table CSV.
#[pyfunction]
fn correlate_models(scores_csv: &str, task: &str) -> PyResult<f64> {
    let table = raam::ScoreTable::from_csv(scores_csv.as_bytes()).map_err(err)?;
    raam::correlate_models(&table, task).map_err(err)
}

#[pymodule]
fn raam_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RaamError", m.py().get_type::<RaamError>())?;
    m.add_class::<PyEmbeddingMatrix>()?;
    m.add_class::<PySentenceMatrix>()?;
    m.add_function(wrap_pyfunction!(segment_sentences, m)?)?;
    m.add_function(wrap_pyfunction!(sentence_vector, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_stats, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_weights, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_profiles, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(partition_dimensions, m)?)?;
    m.add_function(wrap_pyfunction!(raam_score, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(pearson, m)?)?;
    m.add_function(wrap_pyfunction!(spearman, m)?)?;
    m.add_function(wrap_pyfunction!(ols_fit, m)?)?;
    m.add_function(wrap_pyfunction!(cosine_similarity, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_similarity, m)?)?;
    m.add_function(wrap_pyfunction!(correlate_models, m)?)?;
    Ok(())
}
