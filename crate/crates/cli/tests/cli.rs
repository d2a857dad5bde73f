use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use phcalc::check::run_checks;
use phcalc::formats::{parse_barcodes, FiltrationFile};
use phcalc::{run, Command as Cmd, FiltrationInput};
use phcalc_core::{persistent_betti, Barcode, Oracle};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn phcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn phcalc_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_phcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn betti_command() {
    let o = phcalc(&["betti", &data("diabolo.txt"), "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n");
    assert_eq!(stdout(&phcalc(&["betti", &data("diabolo.txt"), "1"])), "1\n");
    let empty = phcalc_stdin(&["betti", "-", "0"], "# nothing here\n\n");
    assert_eq!(stdout(&empty), "0\n");
}

#[test]
fn betti_parse_error_names_line() {
    let o = phcalc_stdin(&["betti", "-", "0"], "0 1\n\n2 two\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn pbetti_command() {
    let f = data("diabolo_filtration.json");
    assert_eq!(stdout(&phcalc(&["pbetti", &f, "0", "0", "4"])), "1\n");
    assert_eq!(stdout(&phcalc(&["pbetti", &f, "0", "0", "0"])), "3\n");
    let bad = phcalc(&["pbetti", &f, "0", "3", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("m = 5"));
}

#[test]
fn mu_command() {
    let f = data("diabolo_filtration.json");
    assert_eq!(stdout(&phcalc(&["mu", &f, "0", "0", "1"])), "2\n");
    assert_eq!(stdout(&phcalc(&["mu", &f, "1", "3", "inf"])), "1\n");
    assert_eq!(phcalc(&["mu", &f, "0", "2", "2"]).status.code(), Some(1));
    assert_eq!(phcalc(&["mu", &f, "0", "2", "never"]).status.code(), Some(1));
}

#[test]
fn barcode_text_rows() {
    let f = data("diabolo_filtration.json");
    let bars = |dim: &str| {
        stdout(&phcalc(&["barcode", &f, dim]))
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    let h0 = bars("0");
    assert_eq!(h0.len(), 6);
    assert_eq!(h0.iter().filter(|l| l.starts_with("[0,1)")).count(), 2);
    assert_eq!(h0.iter().filter(|l| l.starts_with("[2,3)")).count(), 2);
    assert_eq!(h0.iter().filter(|l| l.starts_with("[2,4)")).count(), 1);
    assert_eq!(h0.iter().filter(|l| l.starts_with("[0,inf)")).count(), 1);
    assert_eq!(bars("1"), vec!["[1,5)      *-------o", "[3,inf)        *----->"]);
}

#[test]
fn barcode_single_vertex() {
    let o = phcalc_stdin(&["barcode", "-", "0"], r#"{"levels": [[[0]]]}"#);
    let rows: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect();
    assert_eq!(rows, vec!["[0,inf)  *->"]);
}

#[test]
fn structured_barcodes_satisfy_spanning_counts() {
    let path = data("diabolo_filtration.json");
    let o = phcalc(&["barcode", &path, "--all-dims", "--format", "structured"]);
    assert!(o.status.success());
    let records = parse_barcodes(&stdout(&o)).unwrap();
    assert_eq!(records.len(), 3);
    let f = FiltrationFile::parse(&std::fs::read_to_string(&path).unwrap())
        .unwrap()
        .to_filtration(false)
        .unwrap();
    let oracle = Oracle::default();
    for r in &records {
        let b = Barcode::from(r);
        for k in 0..=5 {
            for l in k..=5 {
                let expected = oracle.persistent_betti(&f, r.dimension, k, l).unwrap();
                assert_eq!(b.spanning_count(k, l), expected, "n={} k={k} l={l}", r.dimension);
            }
        }
    }
    assert!(records[2].intervals.is_empty());
}

#[test]
fn svg_barcode() {
    let o = phcalc(&["barcode", &data("diabolo_filtration.json"), "--format", "svg"]);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="barcode""#).count(), 3);
    assert_eq!(svg.matches(r#"class="bar""#).count(), 8);
}

#[test]
fn check_passes_on_diabolo() {
    let o = phcalc(&["check", &data("diabolo_filtration.json"), "--max-dim", "2", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);
    assert_eq!(report["checks"]["oracle_persistent_betti"], 63);
}

#[test]
fn check_respects_oracle_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_phcalc"))
        .args(["check", &data("diabolo_filtration.json"), "--oracle"])
        .env(phcalc::check::ORACLE_MAX_BITS_ENV, "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!report["skipped"].as_array().unwrap().is_empty());

    let bad = Command::new(env!("CARGO_BIN_EXE_phcalc"))
        .args(["check", &data("diabolo_filtration.json"), "--oracle"])
        .env(phcalc::check::ORACLE_MAX_BITS_ENV, "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn non_nested_file_fails_validation() {
    let o = phcalc_stdin(&["check", "-"], r#"{"levels": [[[0, 1]], [[2]]]}"#);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(0,1)"));
    assert!(o.stdout.is_empty());
    let ok = phcalc_stdin(&["check", "-", "--incremental"], r#"{"levels": [[[0, 1]], [[2]]]}"#);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn malformed_filtration_is_a_parse_error() {
    let o = phcalc_stdin(&["pbetti", "-", "0", "0", "0"], "{\"levels\": [[[0]]\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn gen_writes_file_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json");
    let out = out.to_str().unwrap();
    let o = phcalc(&["gen", "--triangles", "10", "--levels", "5", "--seed", "42", "-o", out]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(out).unwrap();
    let file = FiltrationFile::parse(&text).unwrap();
    assert!(file.name.unwrap().contains("vertices=12"));
    assert_eq!(file.levels.len(), 5);
    let check = phcalc(&["check", out, "--oracle"]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));

    let again = phcalc(&["gen", "--triangles", "10", "--levels", "5", "--seed", "42"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn gen_single_triangle() {
    let o = phcalc(&["gen", "--triangles", "1", "--levels", "1", "--vertices", "3", "--seed", "5"]);
    let file = FiltrationFile::parse(&stdout(&o)).unwrap();
    assert_eq!(file.levels, vec![vec![vec![0, 1, 2]]]);
    assert_eq!(phcalc(&["gen", "--triangles", "0"]).status.code(), Some(1));
    assert_eq!(phcalc(&["gen", "--triangles", "3", "--vertices", "2"]).status.code(), Some(1));
}

#[test]
fn generated_filtrations_pass_all_checks() {
    for seed in 0..100u64 {
        let json = run(&Cmd::Gen {
            triangles: 1 + (seed as usize % 8),
            levels: 1 + (seed as usize % 5),
            vertices: Some(3 + (seed as usize % 4)),
            seed,
            output: None,
        })
        .unwrap()
        .stdout;
        let f = FiltrationFile::parse(&json).unwrap().to_filtration(false).unwrap();
        let report = run_checks(&f, 2, Some(Oracle::default()));
        assert!(report.passed, "seed {seed}: {:?}", report.violations);
        assert!(report.skipped.is_empty(), "seed {seed}: {:?}", report.skipped);
    }
}

#[test]
fn in_process_commands_match_library() {
    let input = FiltrationInput {
        file: data("diabolo_filtration.json"),
        incremental: false,
    };
    let out = run(&Cmd::Pbetti {
        input,
        n: 1,
        j: 3,
        p: 5,
    })
    .unwrap();
    let f = FiltrationFile::parse(&std::fs::read_to_string(data("diabolo_filtration.json")).unwrap())
        .unwrap()
        .to_filtration(false)
        .unwrap();
    assert_eq!(out.stdout, format!("{}\n", persistent_betti(&f, 1, 3, 5).unwrap()));
}

#[test]
fn bench_single_column() {
    let o = phcalc(&["bench", "--triangles", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["triangles", "10"]);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(phcalc(&["nope"]).status.code(), Some(1));
    assert_eq!(phcalc(&["betti"]).status.code(), Some(1));
    assert_eq!(phcalc(&["betti", "/definitely/missing.txt", "0"]).status.code(), Some(1));
    assert_eq!(phcalc(&["--help"]).status.code(), Some(0));
}
