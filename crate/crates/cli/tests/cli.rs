use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_densediv")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn member_examples() {
    assert_eq!(stdout(&["member", "--n", "8424", "--family", "dense", "--i", "3", "--y", "2"]), "true\n");
    assert_eq!(stdout(&["member", "--n", "8424", "--family", "strongdense", "--i", "3", "--y", "2"]), "false\n");
    assert_eq!(stdout(&["member", "--n", "65520", "--family", "dense", "--i", "4"]), "true\n");
    assert_eq!(json(&["member", "--n", "65520", "--family", "strongdense", "--i", "4"])["member"], false);
}

#[test]
fn enumerate_lists() {
    let got = stdout(&["enumerate", "--family", "strongdense", "--i", "2", "--y", "2", "--x", "32"]);
    assert_eq!(got, "1, 2, 4, 8, 12, 16, 24, 32\n");
    let csv = stdout(&["enumerate", "--family", "dense", "--i", "1", "--x", "10", "--format", "csv"]);
    assert_eq!(csv, "n\n1\n2\n4\n6\n8\n");
    let v = json(&["enumerate", "--family", "smooth", "--y", "3", "--x", "10"]);
    assert_eq!(v["members"], serde_json::json!([1, 2, 3, 4, 6, 8, 9]));
}

#[test]
fn count_reports_model() {
    assert_eq!(stdout(&["count", "--family", "smooth", "--y", "2", "--x", "1"]).lines().next(), Some("1"));
    let v = json(&["count", "--family", "bpower", "--a", "1", "--y", "100", "--x", "100"]);
    assert_eq!(v["count"], 100);
    assert_eq!(v["u"], 1.0);
    assert_eq!(v["ratio"], 1.0);
}

#[test]
fn ratio_scan_at_x_equal_y() {
    let csv = stdout(&["ratio-scan", "--family", "bpower", "--a", "1", "--y", "100", "--x", "50,100"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,count,model,ratio"));
    let row: Vec<&str> = lines.nth(1).unwrap().split(',').collect();
    assert_eq!(row[1], "100");
    assert_eq!(row[3].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn table_rows() {
    let v = json(&["table", "lambda", "--imax", "4"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[3]["truncated"], "6.15900");
    assert_eq!(rows[3]["match"], "true");
    let v = json(&["table", "constants", "--imax", "1"]);
    let c: f64 = v["rows"][0]["C"].as_str().unwrap().parse().unwrap();
    assert!((c - 2.28029).abs() < 1e-4);
    let v = json(&["table", "lambda", "--a", "2,3/2"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_suites() {
    let v = json(&["verify", "--suite", "saddle"]);
    assert_eq!(v["pass"], true);
    let v = json(&["verify", "--suite", "identities", "--xmax", "2000"]);
    assert_eq!(v["failed"], 0);
    let v = json(&["verify", "--suite", "sandwich", "--nmax", "5000"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn cert_json() {
    let v = json(&["cert", "--a", "1"]);
    assert_eq!(v["lambda"], 1.0);
    assert_eq!(v["bracket"], serde_json::json!([0, 1]));
    assert!((v["C"].as_f64().unwrap() - 2.28029).abs() < 1e-4);
}

#[test]
fn rho_csv_and_out_dir() {
    let dir = std::env::temp_dir().join(format!("densediv-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_densediv"))
        .args(["rho", "--a", "1/2", "--umax", "2", "--stride", "128", "--out", "rho.csv"])
        .env("DENSEDIV_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.join("rho.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("u,rho,model,ratio"));
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "constants", "--imax", "3", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["member", "--n", "5", "--family", "dense"]).status.code(), Some(2));
    assert_eq!(run(&["member", "--n", "5", "--family", "smooth", "--y", "x/2"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["table", "lambda", "--imax", "26"]).status.code(), Some(2));
    assert_eq!(run(&["ratio-scan", "--family", "smooth", "--x", "10,5"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "smooth", "--x", "1000000000000"]).status.code(), Some(3));
}

#[test]
fn g_evaluation() {
    let v = json(&["g", "--a", "1", "--re", "-1"]);
    assert!(v["re"].as_f64().unwrap().abs() <= v["error"].as_f64().unwrap());
    let s = json(&["g", "--a", "1/2", "--re", "1", "--im", "2", "--method", "series"]);
    let i = json(&["g", "--a", "1/2", "--re", "1", "--im", "2", "--method", "integral"]);
    assert!((s["re"].as_f64().unwrap() - i["re"].as_f64().unwrap()).abs() < 1e-10);
}

#[test]
fn question_search_runs() {
    let v = json(&["question-search", "--i", "2", "--x", "2000"]);
    assert!(v["members"].as_u64().unwrap() > 0);
    assert!(v["consistent"].is_boolean());
}
