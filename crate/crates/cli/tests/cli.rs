use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sumprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumprod")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&sumprod(&["--help"])), 0);
    assert_eq!(code(&sumprod(&["--version"])), 0);
    assert_eq!(code(&sumprod(&["falpha", "--alpha", "1/12"])), 0);
    assert_eq!(code(&sumprod(&["search", "--p", "13"])), 1);
    assert_eq!(code(&sumprod(&["verify", "nope"])), 1);
    assert_eq!(code(&sumprod(&["falpha", "--alpha", "x"])), 1);
    assert_eq!(code(&sumprod(&["search", "--p", "4", "--alpha", "1/2"])), 2);
    assert_eq!(code(&sumprod(&["construct", "--p", "13", "--ell", "5", "--n", "6"])), 2);
    assert_eq!(code(&sumprod(&["search", "--p", "31", "--alpha", "1/2"])), 2);
}

#[test]
fn falpha_values_and_range() {
    let out = sumprod(&["falpha", "--alpha", "1/12,1/16"]);
    let rows: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[0]["value"], "1/2");
    assert_eq!(rows[1]["value"], "3/8");
    assert_eq!(rows[1]["branch"], "linear");

    let out = sumprod(&["--format", "csv", "falpha", "--from", "0.01", "--to", "0.5", "--step", "0.01"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 51);
}

#[test]
fn csv_and_json_agree() {
    let json = sumprod(&["search", "--p", "11,13", "--alpha", "1/5"]);
    let csv_out = sumprod(&["--format", "csv", "search", "--p", "11,13", "--alpha", "1/5"]);
    let text = stdout(&csv_out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    let lines: Vec<serde_json::Value> = stdout(&json).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), lines.len());
    for (row, obj) in rows.iter().zip(&lines) {
        for (h, field) in headers.iter().zip(row) {
            let v = &obj[h];
            let as_text = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            if let (Ok(a), Ok(b)) = (field.parse::<f64>(), as_text.parse::<f64>()) {
                assert_eq!(a, b, "{h}");
            } else {
                assert_eq!(field, as_text, "{h}");
            }
        }
    }
}

#[test]
fn search_output_is_independent_of_workers() {
    let runs: Vec<String> = ["1", "4", "8"]
        .iter()
        .map(|w| stdout(&sumprod(&["--workers", w, "search", "--p", "17,19,23", "--alpha", "1/4"])))
        .collect();
    assert!(!runs[0].is_empty());
    assert!(runs.iter().all(|r| r == &runs[0]));
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

#[test]
fn search_cache_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_s = cache.to_str().unwrap();
    let args = ["--cache", cache_s, "search", "--p", "13", "--alpha", "0.15"];
    let first = sumprod(&args);
    assert_eq!(code(&first), 0);
    let text = fs::read_to_string(&cache).unwrap();
    assert_eq!(text.lines().count(), 1);
    let second = sumprod(&args);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(fs::read_to_string(&cache).unwrap(), text, "hit must not append");

    let tampered = text.replacen("\"sum_size\":3", "\"sum_size\":2", 1);
    assert_ne!(tampered, text);
    write(&cache, &tampered);
    let out = sumprod(&args);
    assert_eq!(code(&out), 2);

    write(&cache, "not json\n");
    assert_eq!(code(&sumprod(&args)), 2);
}

#[test]
fn regularity_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let sets = dir.path().join("sets.txt");
    write(&sets, "p=101;elems=1,2,3,4,5,6,7,8,9,10,11,12,13,14,15\n");
    let cache = dir.path().join("cache.jsonl");
    let args = [
        "--cache",
        cache.to_str().unwrap(),
        "regularity",
        sets.to_str().unwrap(),
        "--delta",
        "9e-7",
        "--eps",
        "1/8",
    ];
    let first = sumprod(&args);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let row: serde_json::Value = serde_json::from_str(stdout(&first).lines().next().unwrap()).unwrap();
    assert_eq!(row["missed_ok"], true);
    assert_eq!(row["spurious_ok"], true);
    assert_eq!(stdout(&sumprod(&args)), stdout(&first));

    assert_eq!(code(&sumprod(&["regularity", sets.to_str().unwrap(), "--delta", "0.4", "--eps", "0.1"])), 2);
    assert_eq!(code(&sumprod(&["regularity", "/nonexistent/sets.txt", "--delta", "1e-7", "--eps", "1/8"])), 2);
}

#[test]
fn construct_reports_bounds() {
    let out = sumprod(&["construct", "--p", "13", "--ell", "3", "--n", "6"]);
    let row: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(row["card"], 2);
    assert_eq!(row["sum_size"], 3);
    assert_eq!(row["prod_size"], 3);
}

#[test]
fn verify_exit_status() {
    let ok = sumprod(&["verify", "spectral"]);
    assert_eq!(code(&ok), 0);
    // The l = 4 construction exceeds the stated envelope at p = 9973.
    let out = sumprod(&["verify", "construction"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("envelope"));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let out = sumprod(&["--format", "csv", "--out", path.to_str().unwrap(), "falpha", "--alpha", "1/50"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 2);
}
