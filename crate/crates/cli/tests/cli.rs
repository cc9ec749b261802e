use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conductors"))
        .arg("--corpus")
        .arg(corpus())
        .args(args)
        .output()
        .expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn conductors_table_for_a5_at_5() {
    let o = run(&["conductors", "--group", "A5", "--prime", "5", "--csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let pairs: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            format!("{},{}", f[3], f[5])
        })
        .collect();
    assert_eq!(pairs, ["1,1", "5,5", "5,5", "1,1", "1,1"]);
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "--all", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("A5 p=5: PASS"));
    assert!(out.trim_end().ends_with("18 of 18 (group, prime) pairs passed"));
}

#[test]
fn output_independent_of_thread_count() {
    let one = run(&[
        "verify",
        "--group",
        "S4",
        "--json",
        "--jobs",
        "1",
        "--samples",
        "10",
    ]);
    let four = run(&[
        "verify",
        "--group",
        "S4",
        "--json",
        "--jobs",
        "4",
        "--samples",
        "10",
    ]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 2);
}

#[test]
fn same_seed_same_output() {
    let a = run(&[
        "verify",
        "--group",
        "S3",
        "--prime",
        "3",
        "--json",
        "--seed",
        "1",
        "--samples",
        "5",
    ]);
    let b = run(&[
        "verify",
        "--group",
        "S3",
        "--prime",
        "3",
        "--json",
        "--seed",
        "1",
        "--samples",
        "5",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn malformed_dataset_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = std::fs::read_to_string(corpus().join("S3.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["classes"][1]["size"] = serde_json::json!("three");
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("classes[1].size"), "{}", stderr(&o));
}

#[test]
fn broken_manifest_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("manifest.json"), "{\"format\": 1, \"groups\": 7}").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_conductors"))
        .args(["--corpus", dir.path().to_str().unwrap(), "validate"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("groups"));
}

#[test]
fn usage_errors_exit_3() {
    for args in [
        vec!["frobnicate"],
        vec!["conductors"],
        vec!["conductors", "--group", "M11"],
        vec!["gendec", "--group", "S3"],
        vec!["gendec", "--group", "S3", "--prime", "7"],
        vec!["verify"],
        vec!["blocks", "--json", "--csv"],
        vec!["conductors", "--group", "S3", "--prime", "x"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn blocks_of_s3() {
    let o = run(&["blocks", "--group", "S3", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let at = |p: u64| doc.as_array().unwrap().iter().filter(|b| b["prime"] == p).count();
    assert_eq!((at(2), at(3)), (2, 1));
}

#[test]
fn search_emits_checkable_certificates() {
    let o = run(&[
        "isometry-search",
        "--group",
        "A5",
        "--prime",
        "5",
        "--target",
        "D10",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let found = doc.as_array().unwrap();
    assert!(!found.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, found[0]["certificate"].to_string()).unwrap();
    let ok = run(&["isometry-check", "--cert", cert.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));

    // Identity pairing sends the trivial character to the trivial one but
    // pairs conductor-5 characters with rational ones.
    let mut bad = found[0]["certificate"].clone();
    bad["permutation"] = serde_json::json!([0, 1, 2, 3]);
    bad["signs"] = serde_json::json!([1, 1, 1, 1]);
    std::fs::write(&cert, bad.to_string()).unwrap();
    let rejected = run(&["isometry-check", "--cert", cert.to_str().unwrap()]);
    assert_eq!(rejected.status.code(), Some(1));

    bad["signs"] = serde_json::json!([1, 2, 1, 1]);
    std::fs::write(&cert, bad.to_string()).unwrap();
    assert_eq!(
        run(&["isometry-check", "--cert", cert.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_refuses_beyond_bound() {
    let o = run(&[
        "isometry-search",
        "--group",
        "A5",
        "--prime",
        "5",
        "--target",
        "D10",
        "--bound",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("384"), "{}", stderr(&o));
}

#[test]
fn restriction_checks() {
    let o = run(&["restrict-check", "--group", "A5", "--prime", "5", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let vals: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .take(4)
        .map(|l| l.split(',').nth(6).unwrap().to_string())
        .collect();
    assert_eq!(vals, ["1", "5", "5", "1"]);

    let na = run(&["restrict-check", "--group", "D8"]);
    assert_eq!(na.status.code(), Some(0));
    assert!(stdout(&na).contains("not-applicable"));
}

#[test]
fn gendec_dump_for_s3() {
    let o = run(&["gendec", "--group", "S3", "--prime", "2", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["columns"], serde_json::json!(["1a/0", "1a/1", "2a/0"]));
    assert_eq!(doc["rows"][2], serde_json::json!(["0", "1", "0"]));
}
