use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const TABLE1_CSV: &str = "X,Y,Z,weight\n1,1,1,1\n1,0,0,1\n0,1,0,1\n0,0,0,1\n";

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_catfield"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn table1_file() -> tempfile_path::Path {
    tempfile_path::write("table1.csv", TABLE1_CSV)
}

mod tempfile_path {
    use std::path::PathBuf;

    pub struct Path(pub PathBuf);

    impl Path {
        pub fn as_str(&self) -> &str {
            self.0.to_str().unwrap()
        }
    }

    pub fn write(name: &str, text: &str) -> Path {
        let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
        let path = dir.join(format!("{}-{name}", std::process::id()));
        std::fs::write(&path, text).unwrap();
        Path(path)
    }
}

#[test]
fn query_exact_point() {
    let f = table1_file();
    let out = run(&["query", "--input", f.as_str(), "--target", "X", "--given", "Y=1,Z=0"], None);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "P(X=1)=0, P(X=0)=1\n");
}

#[test]
fn query_empty_given_is_the_marginal() {
    let f = table1_file();
    let out = run(&["query", "--input", f.as_str(), "--target", "X", "--given", ""], None);
    assert_eq!(stdout(&out), "P(X=1)=1/2, P(X=0)=1/2\n");
}

#[test]
fn query_coarse_and_json() {
    let out = run(
        &["query", "--fixture", "TABLE1", "--target", "X", "--given-coarse", "Y∈{0,1}", "--json"],
        None,
    );
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["distribution"][0]["p"], "1/2");
    let out = run(
        &["query", "--fixture", "TABLE1", "--target", "X", "--given", "Y=1", "--given-coarse", "Z in {0}", "--json"],
        None,
    );
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["distribution"][1]["p"], "1/1");
}

#[test]
fn query_undefined() {
    let out = run(
        &["query", "--fixture", "TABLE2", "--target", "X", "--given", "X=1", "--given-coarse", "Y in {0}"],
        None,
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "undefined\n");
}

#[test]
fn analyze_nonpositive_table() {
    let fixture = run(&["fixtures", "--name", "TABLE2"], None);
    let json = tempfile_path::write("table2.json", &stdout(&fixture));
    let out = run(&["analyze", "--input", json.as_str()], None);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["site"], "X");
    assert_eq!(v[0]["neighbor"], serde_json::json!(["Y"]));
    assert_eq!(v[1]["neighbor"], serde_json::json!(["X"]));
    assert_eq!(v[0]["positive"], false);
    let text = run(&["analyze", "--input", json.as_str(), "--text", "--site", "Y"], None);
    assert!(stdout(&text).contains("site Y"));
    assert!(!stdout(&text).contains("site X"));
}

#[test]
fn fixture_round_trip_is_byte_identical() {
    for name in ["TABLE1", "TABLE2", "UNIFORM8", "COPY", "CHAIN", "COINS:3"] {
        let fixture = run(&["fixtures", "--name", name], None);
        assert!(stdout(&fixture).ends_with("}\n"));
        let piped = run(&["analyze", "--input", "-"], Some(&stdout(&fixture)));
        let direct = run(&["analyze", "--fixture", name], None);
        assert!(piped.status.success(), "{name}: {}", stderr(&piped));
        assert_eq!(piped.stdout, direct.stdout, "{name}");
    }
}

#[test]
fn csv_on_stdin_is_sniffed() {
    let out = run(&["query", "--input", "-", "--target", "Z", "--given", "X=1"], Some(TABLE1_CSV));
    assert_eq!(stdout(&out), "P(Z=1)=1/2, P(Z=0)=1/2\n");
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", "--fixture", "TABLE1"], None);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["properties"].as_array().unwrap().len(), 7);
    let big = run(&["check", "--fixture", "COINS:9"], None);
    assert_eq!(big.status.code(), Some(3));
    assert_eq!(stderr(&big).lines().count(), 1);
}

#[test]
fn mine_streams_json_lines() {
    let out = run(&["mine", "--property", "MI_DOWNWARD_CLOSURE", "--cap", "3"], None);
    assert!(out.status.success());
    let lines: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["property"], "MI_DOWNWARD_CLOSURE");
    assert_eq!(lines[3]["witnesses"], 3);
    let none = run(
        &["mine", "--property", "si-monotone-a", "--max-sites", "2", "--grid", "0,1,2"],
        None,
    );
    assert!(none.status.success());
    let last: Value = serde_json::from_str(stdout(&none).lines().last().unwrap()).unwrap();
    assert_eq!(last["witnesses"], 0);
}

#[test]
fn flag_errors_exit_one_with_one_line() {
    for args in [
        &["bogus"][..],
        &["query", "--fixture", "TABLE1"][..],
        &["analyze", "--fixture", "TABLE1", "--unknown"][..],
        &["analyze", "--fixture", "TABLE1", "--input", "x.csv"][..],
        &["query", "--fixture", "TABLE1", "--target", "Q"][..],
        &["mine", "--property", "NOPE"][..],
        &["mine", "--property", "TWO_AGENTS", "--grid", "x"][..],
        &["fixtures", "--name", "TABLE9"][..],
        &["analyze", "--input", "/nonexistent/file.csv"][..],
    ] {
        let out = run(args, None);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_eq!(stderr(&out).lines().count(), 1, "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"][..], &["query", "--help"][..], &["check", "--version"][..]] {
        let out = run(args, None);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn zero_marginal_input_needs_prune() {
    let csv = "A,B,weight\n0,0,1\n0,1,1\n1,0,0\n1,1,0\n";
    let out = run(&["analyze", "--input", "-", "--format", "csv"], Some(csv));
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["analyze", "--input", "-", "--format", "csv", "--prune"], Some(csv));
    assert!(out.status.success(), "{}", stderr(&out));
}
