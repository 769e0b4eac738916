#![allow(dead_code, clippy::needless_range_loop)]

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use raam::{parse_embeddings, EmbeddingFormat, EmbeddingMatrix, ParseOptions};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn load_glove(name: &str) -> EmbeddingMatrix {
    let file = File::open(fixture(name)).unwrap();
    parse_embeddings(BufReader::new(file), EmbeddingFormat::GloveText, &ParseOptions::default())
        .unwrap()
}

pub fn fixture_corpus() -> String {
    std::fs::read_to_string(fixture("corpus.txt")).unwrap()
}

/// Kernel entropy of one column written as plain scalar loops: two-pass
/// mean and population variance, unnormalized Gaussian weights, then
/// `-sum p ln p` over the normalized weights.
pub fn naive_column_entropy(col: &[f64]) -> f64 {
    let n = col.len();
    let mut sum = 0.0;
    for i in 0..n {
        sum += col[i];
    }
    let mean = sum / n as f64;
    let mut ss = 0.0;
    for i in 0..n {
        ss += (col[i] - mean) * (col[i] - mean);
    }
    let sd = (ss / n as f64).sqrt();
    if sd < 1e-12 {
        return (n as f64).ln();
    }
    let mut w = vec![0.0; n];
    let mut z = 0.0;
    for i in 0..n {
        let t = (col[i] - mean) / sd;
        w[i] = (-0.5 * t * t).exp();
        z += w[i];
    }
    let mut h = 0.0;
    for i in 0..n {
        let p = w[i] / z;
        if p > 0.0 {
            h -= p * p.ln();
        }
    }
    h
}

/// Per-dimension naive entropies of a row-major `rows x dim` matrix.
pub fn naive_entropies(values: &[f64], rows: usize, dim: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(dim);
    for d in 0..dim {
        let mut col = Vec::with_capacity(rows);
        for r in 0..rows {
            col.push(values[r * dim + d]);
        }
        out.push(naive_column_entropy(&col));
    }
    out
}
