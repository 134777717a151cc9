use std::path::Path;
use std::process::{Command, Output};

fn lah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lah")).args(args).output().expect("spawn lah")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const LEO: [&str; 10] = ["--p", "1", "--q", "1", "--r", "1", "--a", "1", "--b", "1"];

fn with_leo<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(LEO.iter()).chain(tail.iter()).copied().collect()
}

#[test]
fn gen_scalar_csv() {
    let out = lah(&with_leo(&["gen"], &["--n", "6", "--kind", "scalar", "--format", "csv"]));
    assert_eq!(code(&out), 0);
    let table: Vec<String> = stdout(&out).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(table, ["n,value", "0,1", "1,1", "2,3", "3,5", "4,9", "5,15"]);
}

#[test]
fn gen_hybrid_first_row() {
    let out = lah(&with_leo(&["gen"], &["--n", "1", "--kind", "hybrid", "--format", "csv"]));
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("m,re,i,eps,h\n0,1,1,3,5\n"), "{}", stdout(&out));

    let out = lah(&with_leo(&["gen"], &["--n", "1", "--kind", "hybrid"]));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["header"]["command"], "gen");
    assert_eq!(doc["terms"][0]["value"], serde_json::json!({"re": "1", "i": "1", "eps": "3", "h": "5"}));
}

#[test]
fn zero_discriminant_is_rejected() {
    let out = lah(&["gen", "--p", "2", "--q", "-1", "--r", "1", "--a", "1", "--b", "1", "--n", "4"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("p²+4q must be nonzero"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn cassini_at_one_point_has_ten_verdicts() {
    let out = lah(&with_leo(&["check", "--identity", "cassini"], &["--n-max", "10"]));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["totals"]["total"], 10, "{}", r["identity"]);
    }
    let any_reclassified = reports.iter().any(|r| r["status"] == "reclassified-under-test");
    assert_eq!(code(&out), if any_reclassified { 3 } else { 0 });
}

#[test]
fn malformed_dsl_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.txt", "# comment\nok: LAH(n) == LAH(n)\nLAH(n) == LAH(n +* 1)\n");
    let out = lah(&["check", "--dsl", &file]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains(&format!("{file}:3:")), "{err}");
    assert!(err.contains("syntax error at 3:"), "{err}");
}

#[test]
fn dsl_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.txt", "shift: LAH(n+2) == p*LAH(n+1) + q*LAH(n) + r*PSI\n");
    let out = lah(&with_leo(&["check", "--dsl", &good], &["--n-max", "5"]));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["reports"][0]["identity"], "shift");
    assert_eq!(doc["reports"][0]["classification"], "under-test");

    let bad = write(dir.path(), "wrong.txt", "LAH(n)*PSI == PSI*LAH(n)\n");
    let out = lah(&with_leo(&["check", "--dsl", &bad], &["--n-max", "5"]));
    assert_eq!(code(&out), 3);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["reports"][0]["identity"], "line-1");
    assert!(!doc["reports"][0]["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn config_errors_and_io_errors() {
    let out = lah(&["check", "--identity", "no-such-identity"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cassini"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"p": 1, "q": 1, "bogus": 3}"#);
    assert_eq!(code(&lah(&["gen", "--config", &cfg])), 2);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&lah(&["gen", "--config", missing.to_str().unwrap()])), 1);

    let unwritable = dir.path().join("no-dir").join("out.json");
    assert_eq!(code(&lah(&["gen", "--output", unwritable.to_str().unwrap()])), 1);

    assert_eq!(code(&lah(&["matrix", "--mode", "sideways"])), 2);
    assert_eq!(code(&lah(&["det", "--format", "csv"])), 2);
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"p": 2, "q": -1, "r": 1, "a": 1, "b": 1, "n": 3, "format": "csv"}"#);
    assert_eq!(code(&lah(&["gen", "--config", &cfg])), 2);
    let out = lah(&["gen", "--config", &cfg, "--p", "1", "--q", "1", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("n,value\n0,1\n1,1\n2,3\n3,5\n"));
    assert!(stdout(&out).contains(r#""p":"1","q":"1","r":"1""#));
}

#[test]
fn reports_are_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "grid.json",
        r#"{"grid": {"p": [1, -2], "q": [1, 3], "r": [0, 1], "a": [1], "b": [2, 0]}, "n-max": 4, "u-max": 2, "v-max": 2, "m-max": 6}"#,
    );
    let args = |threads: &'static str| {
        vec![
            "check", "--config", &cfg, "--threads", threads, "--identity", "vajda", "--identity", "character",
            "--identity", "summation",
        ]
    };
    let a = lah(&args("1"));
    let b = lah(&args("1"));
    let c = lah(&args("2"));
    assert!(matches!(code(&a), 0 | 3));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(code(&a), code(&c));

    let rd1 = dir.path().join("r1");
    let rd2 = dir.path().join("r2");
    let mut one = args("1");
    one.extend(["--report-dir", rd1.to_str().unwrap()]);
    let mut two = args("2");
    two.extend(["--report-dir", rd2.to_str().unwrap()]);
    lah(&one);
    lah(&two);
    let mut names: Vec<_> = std::fs::read_dir(&rd1).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 3);
    for n in names {
        assert_eq!(std::fs::read(rd1.join(&n)).unwrap(), std::fs::read(rd2.join(&n)).unwrap(), "{n:?}");
    }
}

#[test]
fn series_matrix_det() {
    let out = lah(&with_leo(&["series"], &["--order", "21"]));
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["ogf"]["matches_terms"], true);
    assert_eq!(doc["egf"]["matches_terms"], true);
    assert_eq!(doc["ogf"]["denominator"], serde_json::json!(["1", "-2", "0", "1"]));

    for mode in ["companion", "column-vector", "cubic"] {
        assert_eq!(code(&lah(&with_leo(&["matrix", "--mode", mode], &["--m", "3"]))), 0, "{mode}");
    }
    let out = lah(&with_leo(&["matrix", "--mode", "power"], &["--m", "3"]));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["re_part_holds"], true);
    assert_eq!(code(&out), if doc["holds"] == true { 0 } else { 3 });

    let out = lah(&with_leo(&["det"], &["--n", "12", "--reading", "printed"]));
    assert_eq!(code(&out), 0);
    let out = lah(&with_leo(&["det"], &["--n", "12", "--reading", "pattern-corrected"]));
    assert_eq!(code(&out), 3);
    let out = lah(&["det", "--p", "1", "--q", "0", "--a", "1", "--b", "1"]);
    assert_eq!(code(&out), 2);
}
