use std::process::{Command, Output};

fn tortkara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tortkara")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn eval_prints_word() {
    let o = tortkara(&["eval", "1/2*sh(1,2) + 1/2*area(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "12");
}

#[test]
fn eval_syntax_error_is_usage_error() {
    let o = tortkara(&["eval", "area(1,"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 7"));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(tortkara(&["tables", "--bogus"]).status.code(), Some(2));
}

#[test]
fn tables_are_deterministic_and_contain_table_rows() {
    let args = ["tables", "--basis", "lyndon", "--d", "2", "--level", "5"];
    let (a, b) = (tortkara(&args), tortkara(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().any(|l| l.starts_with("12122") && l.contains("3 11222 + 12122")));
    let json = tortkara(&["--format", "json", "tables", "--basis", "hall", "--d", "2", "--level", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn rho_table_lists_values() {
    let o = tortkara(&["rho-table", "--d", "2", "--level", "3"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("112") && l.ends_with("112 - 121")));
}

#[test]
fn verify_all_passes() {
    let o = tortkara(&["verify", "--suite", "all", "--d", "2", "--level", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn term_guard_aborts() {
    let o = tortkara(&["--term-limit", "10", "eval", "sh(w(1111), w(2222))"]);
    assert_eq!(o.status.code(), Some(2));
    let env = Command::new(env!("CARGO_BIN_EXE_tortkara"))
        .args(["eval", "sh(w(1111), w(2222))"])
        .env("TORTKARA_TERM_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn discrete_area_of_square() {
    let o = tortkara(&["discrete-area", "--csv", &data("square.csv"), "--tree", "a(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().ends_with("\t2"));
    let j = tortkara(&["--format", "json", "discrete-area", "--csv", &data("square.csv"), "--tree", "a(1,2)"]);
    assert_eq!(stdout(&j).trim(), r#"{"mode":"exact_rational","values":["0","0","1","2","2"]}"#);
}

#[test]
fn signature_and_missing_file() {
    let o = tortkara(&["signature", "--csv", &data("square.csv"), "--level", "2"]);
    assert_eq!(stdout(&o).trim(), "e + 12 - 21");
    assert_eq!(tortkara(&["signature", "--csv", "/nonexistent.csv"]).status.code(), Some(2));
}

#[test]
fn span_checks() {
    let o = tortkara(&["--format", "json", "span-check", "leftbracket", "--d", "2", "--level", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"d":2,"n":4,"generators":4,"rank":4,"target":4,"full_rank":true}"#);
    assert_eq!(tortkara(&["span-check", "special", "--d", "2", "--level", "4"]).status.code(), Some(0));
    assert_eq!(tortkara(&["span-check", "areas", "--d", "3", "--level", "3"]).status.code(), Some(0));
}
