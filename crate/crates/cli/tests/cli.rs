use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const FIGURE_FUNCTION: &str = "x1*x2 + x3*x4 + x1*x4*x5 + x2*x3*x5 + x3*x4*x5";

fn plateau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plateau"))
        .args(args)
        .env_remove("PLATEAU_DENSE_LIMIT")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn validator() -> jsonschema::Validator {
    let text = include_str!("../schema/analyze-report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, report: &Value) {
    let errors: Vec<String> = v
        .iter_errors(report)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn analyze_majority() {
    let r = json(&plateau(&["analyze", "--anf", "x1*x2 + x1*x3 + x2*x3", "--n", "3"]));
    assert_eq!(r["plateau"]["s"], 1);
    assert_eq!(r["verdict"], "strongly_walk_regular");
    let first = &r["certificates"][0];
    assert_eq!(first["type"], "walkreg");
    assert_eq!(first["params"]["ell"], 3);
    assert_eq!(
        (first["params"]["sigma"].as_i64(), first["params"]["mu"].as_i64()),
        (Some(10), Some(6))
    );
    assert_eq!(first["params"]["nu"], 6);
    assert!(first["witness"].is_null());
    assert_eq!(r["certificates"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_constant_is_degenerate() {
    let r = json(&plateau(&["analyze", "--tt", "00000000"]));
    assert_eq!(r["degenerate"], true);
    assert_eq!(r["verdict"], "degenerate");
}

#[test]
fn analyze_figure_function_is_semibent() {
    let r = json(&plateau(&["analyze", "--anf", FIGURE_FUNCTION, "--n", "5"]));
    assert_eq!(r["plateau"]["semibent"], true);
    assert_eq!(r["plateau"]["s"], 1);
    assert_eq!(r["graph"]["order"], 32);
}

#[test]
fn reports_match_the_schema() {
    let v = validator();
    let inputs: &[&[&str]] = &[
        &["--tt", "00010111"],
        &["--tt", "00000000"],
        &["--tt", "0011"],
        &["--tt", "0001"],
        &["--tt", "01"],
        &["--tt", "00000001"],
        &["--tt", "0111111111111110"],
        &["--hex", "0f3c"],
        &["--anf", FIGURE_FUNCTION, "--n", "5"],
        &["--anf", "x1*x2 + x3*x4 + x5*x6", "--n", "6"],
        &["--anf", "x1*x2*x3 + x4", "--n", "4"],
    ];
    for args in inputs {
        let mut full = vec!["analyze"];
        full.extend_from_slice(args);
        assert_valid(&v, &json(&plateau(&full)));
    }
    for p in (0..1u32 << 16).step_by(257).filter(|p| p & 0x8000 == 0) {
        let tt = format!("{p:016b}");
        assert_valid(&v, &json(&plateau(&["analyze", "--tt", &tt])));
    }
}

#[test]
fn schema_rejects_tampered_reports() {
    let v = validator();
    let mut r = json(&plateau(&["analyze", "--tt", "00010111"]));
    assert_valid(&v, &r);
    r["parseval"] = Value::Bool(false);
    assert!(!v.is_valid(&r));
    let mut r = json(&plateau(&["analyze", "--tt", "00010111"]));
    r["certificates"][0]["type"] = "bogus".into();
    assert!(!v.is_valid(&r));
    let mut r = json(&plateau(&["analyze", "--tt", "00010111"]));
    r["certificates"][0]["verified_by"] = Value::Array(vec![]);
    assert!(!v.is_valid(&r));
}

#[test]
fn exit_codes() {
    assert_eq!(plateau(&["analyze", "--tt", "10010111"]).status.code(), Some(3));
    assert_eq!(plateau(&["analyze", "--tt", "0101x"]).status.code(), Some(2));
    assert_eq!(
        plateau(&["analyze", "--anf", "x1*x9", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(plateau(&["analyze", "--anf", "x1"]).status.code(), Some(2));
    assert_eq!(plateau(&["analyze", "--tt", "0001", "--n", "3"]).status.code(), Some(2));
    assert_eq!(
        plateau(&["analyze", "--tt", "0001", "--ell-max", "4"]).status.code(),
        Some(3)
    );
    assert_eq!(
        plateau(&["analyze", "--tt", "0001", "--dense-limit", "13"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        plateau(&["enumerate", "--n", "5", "--exhaustive"]).status.code(),
        Some(3)
    );
    assert_eq!(
        plateau(&["enumerate", "--n", "9", "--sample", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(
        plateau(&["analyze", "--input", "/nonexistent/f.tt"]).status.code(),
        Some(5)
    );
    let out = plateau(&[
        "export",
        "--tt",
        "0001",
        "--kind",
        "dot",
        "--out",
        "/nonexistent/dir/g.dot",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn dense_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_plateau"))
        .args(["analyze", "--tt", "00010111"])
        .env("PLATEAU_DENSE_LIMIT", "2")
        .output()
        .unwrap();
    let r = json(&out);
    let cert = &r["certificates"][0];
    let by: Vec<&str> = cert["verified_by"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(by, ["spectral_roots"]);
    assert_eq!(r["spectrum"]["exhaustive"], false);

    let out = Command::new(env!("CARGO_BIN_EXE_plateau"))
        .args(["analyze", "--tt", "00010111"])
        .env("PLATEAU_DENSE_LIMIT", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn export_formats() {
    let out = plateau(&["export", "--anf", FIGURE_FUNCTION, "--n", "5", "--kind", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph G {"));
    let nodes = dot
        .lines()
        .filter(|l| l.trim_end().ends_with("\";") && !l.contains("--"))
        .count();
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!((nodes, edges), (32, 32 * 12 / 2));

    let out = plateau(&["export", "--tt", "00010111", "--kind", "adjacency"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<u32>> = csv
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.len() == 8 && r.iter().sum::<u32>() == 4));

    let spectrum = json(&plateau(&["export", "--tt", "00000000", "--kind", "spectrum"]));
    assert_eq!(spectrum["values"], serde_json::json!([0, 0, 0, 0, 0, 0, 0, 0]));
    assert_eq!(spectrum["kind"], "fourier");
}

#[test]
fn export_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let out = plateau(&[
        "export",
        "--tt",
        "0001",
        "--kind",
        "dot",
        "--labels",
        "integer",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let dot = fs::read_to_string(path).unwrap();
    assert!(dot.contains("\"0\" -- \"3\";"));
    assert!(dot.contains("\"1\" -- \"2\";"));
}

#[test]
fn enumerate_small_exhaustive() {
    let r = json(&plateau(&["enumerate", "--n", "3", "--exhaustive"]));
    let s = &r["summary"];
    assert_eq!(s["scanned"], 256);
    assert_eq!(s["failures"], serde_json::json!([]));
    assert_eq!(s["semibent_table_checked"], s["semibent"]);
    assert_eq!(r["mode"], "exhaustive");

    let csv = String::from_utf8(plateau(&["enumerate", "--n", "2", "--exhaustive", "--format", "csv"]).stdout).unwrap();
    assert!(csv.starts_with("key,value\n"));
    assert!(csv.contains("\nscanned,16\n"));
}

#[test]
fn enumerate_seed_changes_sample() {
    let a = plateau(&[
        "enumerate",
        "--n",
        "4",
        "--sample",
        "50",
        "--seed",
        "1",
        "--generator",
        "uniform",
    ])
    .stdout;
    let b = plateau(&[
        "enumerate",
        "--n",
        "4",
        "--sample",
        "50",
        "--seed",
        "1",
        "--generator",
        "uniform",
    ])
    .stdout;
    let c = plateau(&[
        "enumerate",
        "--n",
        "4",
        "--sample",
        "50",
        "--seed",
        "2",
        "--generator",
        "uniform",
    ])
    .stdout;
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn verify_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.tt");
    fs::write(
        &path,
        "# corpus\ntt:00010111\nhex:0f3c\n\nanf:5:x1*x2 + x3*x4 + x1*x4*x5 + x2*x3*x5 + x3*x4*x5\ntt:10000000\n",
    )
    .unwrap();
    let out = plateau(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let entries: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries[..3].iter().all(|e| e["ok"] == true));
    assert_eq!(entries[3]["exit_code"], 3);

    let single = dir.path().join("one.tt");
    fs::write(&single, "tt:0001\n").unwrap();
    let r = json(&plateau(&["analyze", "--input", single.to_str().unwrap()]));
    assert_eq!(r["plateau"]["bent"], true);
    assert_eq!(
        plateau(&["analyze", "--input", path.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn text_and_csv_reports() {
    let text = String::from_utf8(plateau(&["analyze", "--tt", "00010111", "--format", "text"]).stdout).unwrap();
    assert!(text.contains("semibent: s = 1, k = 4"));
    assert!(text.contains("walk-regular l = 3: (10, 6, 6)"));
    let csv = String::from_utf8(plateau(&["analyze", "--tt", "00010111", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("w_index,walsh_hadamard,fourier"));
    assert_eq!(csv.lines().nth(8), Some("7,-4,2"));
}
