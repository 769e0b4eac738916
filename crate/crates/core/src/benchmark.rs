//! Word-similarity benchmarks and cross-model score tables.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::embedding_io::EmbeddingMatrix;
use crate::error::{check_same_len, Error, Result};
use crate::stats::{pearson, spearman};

pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    check_same_len(u.len(), v.len())?;
    let (mut dot, mut uu, mut vv) = (0.0, 0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        uu += a * a;
        vv += b * b;
    }
    if uu == 0.0 || vv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((dot / (uu.sqrt() * vv.sqrt())).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordPair {
    pub left: String,
    pub right: String,
    pub gold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityDataset {
    pub name: String,
    pub pairs: Vec<WordPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    Comma,
    Tab,
    /// Tab if the first record contains one, comma otherwise.
    #[default]
    Auto,
}

/// Reads `word1,word2,score` records (comma or tab separated).
pub fn load_pairs<R: Read>(
    mut reader: R,
    name: impl Into<String>,
    delimiter: Delimiter,
    header: bool,
) -> Result<SimilarityDataset> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let delim = match delimiter {
        Delimiter::Comma => b',',
        Delimiter::Tab => b'\t',
        Delimiter::Auto => {
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            if first.contains('\t') {
                b'\t'
            } else {
                b','
            }
        }
    };
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delim)
        .has_headers(header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut pairs = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 3 {
            return Err(Error::MalformedRecord {
                line,
                reason: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let gold: f64 = record[2].parse().map_err(|_| Error::MalformedRecord {
            line,
            reason: format!("bad score {:?}", &record[2]),
        })?;
        if !gold.is_finite() || record[0].is_empty() || record[1].is_empty() {
            return Err(Error::MalformedRecord {
                line,
                reason: "empty word or non-finite score".into(),
            });
        }
        pairs.push(WordPair {
            left: record[0].to_string(),
            right: record[1].to_string(),
            gold,
        });
    }
    if pairs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(SimilarityDataset {
        name: name.into(),
        pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityResult {
    pub dataset: String,
    pub spearman: f64,
    pub pearson: f64,
    pub evaluated: usize,
    pub total: usize,
    pub coverage: f64,
}

/// Cosine similarity against gold scores over the in-vocabulary pairs.
///
/// With `lowercase` set, dataset words are lowercased before lookup.
pub fn evaluate_similarity(
    emb: &EmbeddingMatrix,
    ds: &SimilarityDataset,
    lowercase: bool,
) -> Result<SimilarityResult> {
    let lookup = |w: &str| {
        if lowercase {
            emb.get(&w.to_lowercase())
        } else {
            emb.get(w)
        }
    };
    let mut model = Vec::new();
    let mut gold = Vec::new();
    for pair in &ds.pairs {
        if let (Some(u), Some(v)) = (lookup(&pair.left), lookup(&pair.right)) {
            model.push(cosine_similarity(u, v)?);
            gold.push(pair.gold);
        }
    }
    if model.len() < 2 {
        return Err(Error::InsufficientCoverage {
            evaluated: model.len(),
            total: ds.pairs.len(),
        });
    }
    Ok(SimilarityResult {
        dataset: ds.name.clone(),
        spearman: spearman(&model, &gold)?,
        pearson: pearson(&model, &gold)?,
        evaluated: model.len(),
        total: ds.pairs.len(),
        coverage: model.len() as f64 / ds.pairs.len() as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub model: String,
    pub raam: f64,
    pub tasks: BTreeMap<String, f64>,
}

/// Named models with their RAAM score and external task scores.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ScoreTable {
    pub rows: Vec<ScoreRow>,
}

impl ScoreTable {
    /// Reads a CSV with header `model,raam,<task1>,...`. Empty task cells
    /// mean the task was not measured for that model.
    pub fn from_csv<R: Read>(reader: R) -> Result<ScoreTable> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.len() < 2
            || !headers[0].eq_ignore_ascii_case("model")
            || !headers[1].eq_ignore_ascii_case("raam")
        {
            return Err(Error::MalformedRecord {
                line: 1,
                reason: "header must start with \"model,raam\"".into(),
            });
        }
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            let number = |field: &str| -> Result<f64> {
                field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::MalformedRecord {
                        line,
                        reason: format!("bad number {field:?}"),
                    })
            };
            let mut tasks = BTreeMap::new();
            for (name, field) in headers.iter().zip(record.iter()).skip(2) {
                if !field.is_empty() {
                    tasks.insert(name.to_string(), number(field)?);
                }
            }
            rows.push(ScoreRow {
                model: record[0].to_string(),
                raam: number(&record[1])?,
                tasks,
            });
        }
        Ok(ScoreTable { rows })
    }
}

/// Pearson correlation between RAAM scores and `task` over the rows that
/// report the task.
pub fn correlate_models(table: &ScoreTable, task: &str) -> Result<f64> {
    let (raam, scores): (Vec<f64>, Vec<f64>) = table
        .rows
        .iter()
        .filter_map(|r| r.tasks.get(task).map(|t| (r.raam, *t)))
        .unzip();
    if raam.is_empty() {
        return Err(Error::MissingTask(task.to_string()));
    }
    pearson(&raam, &scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cosine_examples() {
        assert!((cosine_similarity(&[1.0, 2.0], &[1.0, 2.0]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        let c = cosine_similarity(&[1.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(cosine_similarity(&[0.0, 0.0], &[1.0, 0.0]), Err(Error::ZeroVector)));
        assert!(matches!(
            cosine_similarity(&[1.0], &[1.0, 0.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn load_pairs_variants() {
        let ds = load_pairs("cat,dog,7.35".as_bytes(), "t", Delimiter::Auto, false).unwrap();
        assert_eq!(ds.pairs, [WordPair { left: "cat".into(), right: "dog".into(), gold: 7.35 }]);

        let tsv = "Word 1\tWord 2\tHuman (mean)\ntiger\tcat\t7.35\nbook\tpaper\t7.46\n";
        let ds = load_pairs(tsv.as_bytes(), "ws", Delimiter::Auto, true).unwrap();
        assert_eq!(ds.pairs.len(), 2);
        assert_eq!(ds.pairs[1].left, "book");

        let err = load_pairs("cat,dog".as_bytes(), "t", Delimiter::Comma, false).unwrap_err();
        assert!(matches!(err, Error::MalformedRecord { line: 1, .. }));
        let err = load_pairs("a,b,1\ncat,dog,x".as_bytes(), "t", Delimiter::Auto, false).unwrap_err();
        assert!(matches!(err, Error::MalformedRecord { line: 2, .. }));
        let err = load_pairs("h1,h2,h3\n".as_bytes(), "t", Delimiter::Auto, true).unwrap_err();
        assert!(matches!(err, Error::EmptyDataset));
    }

    fn emb() -> EmbeddingMatrix {
        EmbeddingMatrix::from_rows(
            [
                ("a", vec![1.0, 0.0]),
                ("b", vec![1.0, 1.0]),
                ("c", vec![0.0, 1.0]),
                ("d", vec![-1.0, 0.2]),
            ],
            "t",
        )
        .unwrap()
    }

    fn ds(pairs: &[(&str, &str, f64)]) -> SimilarityDataset {
        SimilarityDataset {
            name: "t".into(),
            pairs: pairs
                .iter()
                .map(|(l, r, g)| WordPair { left: l.to_string(), right: r.to_string(), gold: *g })
                .collect(),
        }
    }

    #[test]
    fn coverage_accounting() {
        let e = emb();
        let err = evaluate_similarity(&e, &ds(&[("a", "b", 1.0)]), false).unwrap_err();
        assert!(matches!(err, Error::InsufficientCoverage { evaluated: 1, total: 1 }));
        let err = evaluate_similarity(&e, &ds(&[("a", "x", 1.0), ("y", "b", 2.0)]), false)
            .unwrap_err();
        assert!(matches!(err, Error::InsufficientCoverage { evaluated: 0, total: 2 }));

        let r = evaluate_similarity(
            &e,
            &ds(&[("a", "b", 3.0), ("a", "zzz", 1.0), ("a", "c", 1.0), ("a", "d", 0.0)]),
            false,
        )
        .unwrap();
        assert_eq!((r.evaluated, r.total), (3, 4));
        assert_eq!(r.coverage, 0.75);
        assert!((r.spearman - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lowercase_lookup() {
        let e = emb();
        let d = ds(&[("A", "B", 3.0), ("A", "C", 1.0)]);
        assert!(evaluate_similarity(&e, &d, false).is_err());
        assert_eq!(evaluate_similarity(&e, &d, true).unwrap().evaluated, 2);
    }

    #[test]
    fn score_table_and_correlation() {
        let csv = "model,raam,senti,ws\nA,1.0,2.0,\nB,2.0,4.0,3\nC,4.0,8.0,1\n";
        let t = ScoreTable::from_csv(csv.as_bytes()).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(!t.rows[0].tasks.contains_key("ws"));
        assert!((correlate_models(&t, "senti").unwrap() - 1.0).abs() < 1e-12);
        assert!((correlate_models(&t, "ws").unwrap() + 1.0).abs() < 1e-12);
        assert!(matches!(correlate_models(&t, "men"), Err(Error::MissingTask(_))));

        let one = ScoreTable::from_csv("model,raam,senti\nA,1,2\n".as_bytes()).unwrap();
        assert!(matches!(
            correlate_models(&one, "senti"),
            Err(Error::InsufficientSamples { .. })
        ));
        assert!(ScoreTable::from_csv("name,score\nA,1\n".as_bytes()).is_err());
        assert!(ScoreTable::from_csv("model,raam\nA,abc\n".as_bytes()).is_err());
    }

    #[test]
    fn three_row_table_matches_pearson_oracle() {
        let t = ScoreTable::from_csv("model,raam,x\nA,1,6\nB,2,4\nC,3,5\n".as_bytes()).unwrap();
        // Sxy = -1, Sxx = Syy = 2
        assert!((correlate_models(&t, "x").unwrap() + 0.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn cosine_scale_invariant(
            u in prop::collection::vec(-10.0..10.0f64, 1..20),
            k in 0.01..100.0f64,
        ) {
            prop_assume!(u.iter().any(|x| x.abs() > 1e-3));
            prop_assert!((cosine_similarity(&u, &u).unwrap() - 1.0).abs() < 1e-12);
            let v: Vec<f64> = u.iter().rev().cloned().collect();
            let ku: Vec<f64> = u.iter().map(|x| k * x).collect();
            if let Ok(c) = cosine_similarity(&u, &v) {
                prop_assert!((c - cosine_similarity(&ku, &v).unwrap()).abs() < 1e-12);
            }
        }

        #[test]
        fn correlate_row_permutation_invariant(
            rows in prop::collection::vec((0.0..100.0f64, 0.0..100.0f64), 3..12),
            seed in any::<u64>(),
        ) {
            let table = |rows: &[(f64, f64)]| ScoreTable {
                rows: rows.iter().enumerate().map(|(i, (r, t))| ScoreRow {
                    model: i.to_string(),
                    raam: *r,
                    tasks: [("t".to_string(), *t)].into(),
                }).collect(),
            };
            let mut shuffled = rows.clone();
            let k = (seed as usize) % shuffled.len();
            shuffled.rotate_left(k);
            let last = shuffled.len() - 1;
            shuffled.swap(0, last);
            if let Ok(r) = correlate_models(&table(&rows), "t") {
                prop_assert!((r - correlate_models(&table(&shuffled), "t").unwrap()).abs() < 1e-12);
            }
        }
    }
}
