use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rough_confusion::fixtures::ELECTRONICS_CSV;
use rough_confusion::report::AnalysisReport;
use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rough-confusion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn table(dir: &Path) -> PathBuf {
    let path = dir.join("electronics.csv");
    fs::write(&path, ELECTRONICS_CSV).unwrap();
    path
}

fn analyze(extra: &[&str]) -> Output {
    let dir = TempDir::new().unwrap();
    let input = table(dir.path());
    let mut args = vec![
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--attributes",
        "Price,Sound",
    ];
    args.extend_from_slice(extra);
    bin(&args)
}

#[test]
fn analyze_worked_example_as_json() {
    let out = analyze(&[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = AnalysisReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let g = &report.approximation.gamma;
    assert_eq!((g.num, g.den, g.decimal), (2, 3, 0.666667));
    assert_eq!(
        (report.indices.success_ratio.num, report.indices.success_ratio.den),
        (5, 6)
    );
    assert_eq!(report.confusion_matrix.cells(), &[vec![3, 1], vec![0, 2]]);
    assert!(report.theorems.pass);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        json["approximation"]["gamma"],
        serde_json::json!({"num": 2, "den": 3, "decimal": 0.666667})
    );
}

#[test]
fn violating_mapping_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let input = table(dir.path());
    let mapping = dir.path().join("f.map");
    fs::write(&mapping, "# X4 sent to the wrong class\n1 1\n2 2\n3 2\n4 2\n").unwrap();
    let out = bin(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--attributes",
        "Price,Sound",
        "--classifier",
        mapping.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let report = AnalysisReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(!report.classifier.satisfies_rule);
    assert_eq!(report.classifier.violations, vec![4]);
    assert!(!report.bounds.rule_validated);
}

#[test]
fn text_and_json_agree() {
    let json = AnalysisReport::from_json(std::str::from_utf8(&analyze(&[]).stdout).unwrap()).unwrap();
    let text = String::from_utf8(analyze(&["--format", "text"]).stdout).unwrap();
    assert!(text.contains(&format!(
        "gamma = {}/{}",
        json.approximation.gamma.num, json.approximation.gamma.den
    )));
    assert!(text.contains(&format!(
        "success ratio = {}/{}",
        json.indices.success_ratio.num, json.indices.success_ratio.den
    )));
    for (g, block) in json.granules.iter().enumerate() {
        let ids: Vec<String> = block.iter().map(usize::to_string).collect();
        assert!(text.contains(&format!("X{} = {{{}}}", g + 1, ids.join(","))));
    }
    assert!(text.contains("^Y1   3   1   4"), "{text}");
}

#[test]
fn reports_are_byte_identical() {
    let a = analyze(&["--tie-break", "random", "--seed", "11"]);
    let b = analyze(&["--tie-break", "random", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_with_one_and_print_nothing() {
    let dir = TempDir::new().unwrap();
    let constant = dir.path().join("constant.csv");
    fs::write(&constant, "a,d\n1,x\n2,x\n").unwrap();
    let ragged = dir.path().join("ragged.csv");
    fs::write(&ragged, "a,b,d\n1,2,x\n3,y\n").unwrap();
    for args in [
        vec!["analyze", "--input", constant.to_str().unwrap()],
        vec!["analyze", "--input", ragged.to_str().unwrap()],
        vec!["analyze", "--input", "/does/not/exist.csv"],
        vec!["analyze", "--input", constant.to_str().unwrap(), "--format", "yaml"],
        vec!["fuzz", "--max-classes", "1"],
        vec!["frobnicate"],
    ] {
        let out = bin(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = bin(&["analyze", "--input", ragged.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3"));
}

#[test]
fn bad_mapping_file_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = table(dir.path());
    let mapping = dir.path().join("f.map");
    fs::write(&mapping, "1 1\n2 2\n").unwrap();
    let out = bin(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--attributes",
        "Price,Sound",
        "--classifier",
        mapping.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("granule(s) 3, 4"));
}

#[test]
fn fuzz_command() {
    let out = bin(&["fuzz", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("passed: 0/0"));

    let a = bin(&["fuzz", "--trials", "300", "--seed", "7", "--format", "json"]);
    let b = bin(&["fuzz", "--trials", "300", "--seed", "7", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let summary: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(summary["passed"], 300);
    assert_eq!(summary["failed"], 0);

    let r = bin(&["fuzz", "--trials", "300", "--classifier", "random"]);
    assert_eq!(r.status.code(), Some(0));
}
