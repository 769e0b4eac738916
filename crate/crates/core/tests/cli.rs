mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture;
use raam::report::AnalysisReport;

fn raam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raam"))
        .args(args)
        .output()
        .expect("failed to spawn raam")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn analyze_fixture(dir: &Path, extra: &[&str]) -> Output {
    let vectors = fixture("vectors50.txt");
    let corpus = fixture("corpus.txt");
    let out = dir.join("report.json");
    let scatter = dir.join("scatter.txt");
    let mut args = vec![
        "analyze",
        "--embeddings",
        path(&vectors),
        "--format",
        "glove-text",
        "--corpus",
        path(&corpus),
        "--lowercase",
        "--out",
        path(&out),
        "--scatter",
        path(&scatter),
    ];
    args.extend_from_slice(extra);
    raam(&args)
}

#[test]
fn analyze_writes_report_and_scatter() {
    let dir = tempfile::tempdir().unwrap();
    let o = analyze_fixture(dir.path(), &["--csv", path(&dir.path().join("rows.csv"))]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report =
        AnalysisReport::from_json(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report.schema_version, "1");
    assert_eq!(report.rows.len(), 50);
    report.verify().unwrap();
    let expected: f64 = report
        .rows
        .iter()
        .map(|r| r.word_entropy.max(r.sentence_entropy))
        .sum();
    assert_eq!(report.total_score, expected);
    assert!(report.rows.iter().all(|r| r.mi.is_some()));

    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.starts_with(&format!("total_score {}\n", raam::report::sig6(expected))));
    assert!(stdout.contains("fit slope"));

    let scatter = std::fs::read_to_string(dir.path().join("scatter.txt")).unwrap();
    assert_eq!(scatter.lines().count(), 50);
    assert!(scatter.lines().all(|l| l.split(' ').count() == 2));
    let csv = std::fs::read_to_string(dir.path().join("rows.csv")).unwrap();
    assert_eq!(csv.lines().count(), 51);
}

#[test]
fn analyze_mi_off_omits_mi() {
    let dir = tempfile::tempdir().unwrap();
    let o = analyze_fixture(dir.path(), &["--mi", "off"]);
    assert!(o.status.success());
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(!json.contains("\"mi\""));
    assert!(!json.contains("mi_pairs"));
}

#[test]
fn analyze_paper_literal_mode_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = analyze_fixture(dir.path(), &["--mi", "paper-literal"]);
    assert!(o.status.success());
    let report =
        AnalysisReport::from_json(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert!(report.rows.iter().all(|r| r.mi.is_some()));
}

#[test]
fn analyze_is_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(analyze_fixture(a.path(), &[]).status.success());
    assert!(analyze_fixture(b.path(), &[]).status.success());
    for name in ["report.json", "scatter.txt"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs");
    }
}

#[test]
fn analyze_missing_corpus_is_usage_error() {
    let vectors = fixture("vectors50.txt");
    let o = raam(&["analyze", "--embeddings", path(&vectors), "--format", "glove-text"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn analyze_runtime_error_is_single_line() {
    let dir = tempfile::tempdir().unwrap();
    let o = raam(&[
        "analyze",
        "--embeddings",
        path(&fixture("tiny_vectors.txt")),
        "--format",
        "word2vec-text",
        "--corpus",
        path(&fixture("tiny_corpus.txt")),
        "--out",
        path(&dir.path().join("r.json")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error[malformed_header]:"), "{err}");
}

#[test]
fn simeval_matches_library() {
    let vectors = fixture("vectors50.txt");
    let pairs = fixture("pairs5.csv");
    let o = raam(&[
        "simeval",
        "--embeddings",
        path(&vectors),
        "--format",
        "glove-text",
        "--pairs",
        path(&pairs),
        "--header",
    ]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();

    let emb = common::load_glove("vectors50.txt");
    let ds = raam::load_pairs(
        std::fs::File::open(&pairs).unwrap(),
        "pairs5",
        raam::Delimiter::Auto,
        true,
    )
    .unwrap();
    let r = raam::evaluate_similarity(&emb, &ds, false).unwrap();
    let line = stdout.lines().nth(1).unwrap();
    let fields: Vec<&str> = line.split('\t').collect();
    assert_eq!(fields[0], "pairs5");
    assert_eq!(fields[1], raam::report::sig6(r.spearman));
}

#[test]
fn simeval_two_files_in_order_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sim.json");
    let o = raam(&[
        "simeval",
        "--embeddings",
        path(&fixture("vectors50.txt")),
        "--format",
        "glove-text",
        "--pairs",
        path(&fixture("pairs_oov.tsv")),
        "--pairs",
        path(&fixture("pairs5.csv")),
        "--out",
        path(&out),
    ]);
    // pairs5.csv has a header; without --header it is a malformed score
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[malformed_record]"));

    let o = raam(&[
        "simeval",
        "--embeddings",
        path(&fixture("vectors50.txt")),
        "--format",
        "glove-text",
        "--pairs",
        path(&fixture("pairs_oov.tsv")),
        "--pairs",
        path(&fixture("pairs_alloov.csv")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("insufficient_coverage"));

    let pairs_copy = dir.path().join("second.tsv");
    std::fs::copy(fixture("pairs_oov.tsv"), &pairs_copy).unwrap();
    let o = raam(&[
        "simeval",
        "--embeddings",
        path(&fixture("vectors50.txt")),
        "--format",
        "glove-text",
        "--pairs",
        path(&fixture("pairs_oov.tsv")),
        "--pairs",
        path(&pairs_copy),
        "--out",
        path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    let names: Vec<&str> = stdout.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(names, ["pairs_oov", "second"]);
    assert!(stdout.contains("0.75 (3/4)"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["results"].as_array().unwrap().len(), 2);
    assert_eq!(json["results"][0]["coverage"], 0.75);
}

#[test]
fn simeval_all_oov_fails() {
    let o = raam(&[
        "simeval",
        "--embeddings",
        path(&fixture("vectors50.txt")),
        "--format",
        "glove-text",
        "--pairs",
        path(&fixture("pairs_alloov.csv")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error[insufficient_coverage]"), "{err}");
}

#[test]
fn correlate_table_scores() {
    let o = raam(&["correlate", "--scores", path(&fixture("model_scores.csv")), "--task", "senti"]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout, "senti\t0.79031\n");
}

#[test]
fn correlate_errors() {
    let o = raam(&["correlate", "--scores", path(&fixture("model_scores.csv")), "--task", "men"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[missing_task]"));

    let o = raam(&["correlate", "--scores", path(&fixture("model_scores_single.csv")), "--task", "senti"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[insufficient_samples]"));

    let o = raam(&["correlate", "--scores", path(&fixture("model_scores.csv"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let o = raam(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("analyze"));
}
