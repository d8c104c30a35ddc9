use std::process::{Command, Output};

use serde_json::Value;

fn kiselman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kiselman"))
        .args(args)
        .env_remove("KISELMAN_MAX_ELEMENTS")
        .env_remove("KISELMAN_MAX_RULES")
        .env_remove("KISELMAN_GUARD_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = kiselman(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn words(v: &Value, key: &str) -> Vec<Value> {
    v[key].as_array().unwrap().clone()
}

#[test]
fn elements_rank_one() {
    let out = kiselman(&["elements", "-n", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ε") && text.contains("a1"));
    assert!(text.ends_with("count: 2\n"));
}

#[test]
fn idempotents_rank_two_and_three() {
    let v = json(&["elements", "-n", "2", "--idempotents-only"]);
    let got: Vec<Value> = words(&v, "elements")
        .iter()
        .map(|e| e["word"].clone())
        .collect();
    let want: Vec<Value> = ["[]", "[1]", "[2]", "[2,1]"]
        .iter()
        .map(|s| serde_json::from_str(s).unwrap())
        .collect();
    assert_eq!(got, want);
    assert_eq!(
        json(&["elements", "-n", "3", "--idempotents-only"])["count"],
        8
    );
}

#[test]
fn endos_counts_by_both_methods() {
    assert_eq!(json(&["endos", "-n", "1"])["count"], 2);
    assert_eq!(json(&["endos", "-n", "2"])["count"], 15);
    let brute = json(&["endos", "-n", "3", "--method", "brute"]);
    let mono = json(&["endos", "-n", "3", "--method", "monotone"]);
    assert_eq!(brute["count"], 330);
    assert_eq!(brute["endomorphisms"], mono["endomorphisms"]);
}

#[test]
fn endos_guard_exits_three() {
    assert_eq!(kiselman(&["endos", "-n", "5"]).status.code(), Some(3));
}

#[test]
fn count_examples() {
    let v = json(&["count", "-m", "2", "-n", "2"]);
    assert_eq!(v["rows"][0]["closed"], "15");
    assert_eq!(v["rows"][0]["brute"], "15");
    assert_eq!(v["rows"][0]["agree"], true);
    let v = json(&["count", "-m", "3", "-n", "1"]);
    assert_eq!(v["rows"][0]["closed"], "8");
    assert_eq!(v["rows"][0]["agree"], true);
}

#[test]
fn count_grid_agrees() {
    let v = json(&["count", "--grid", "--max-bits", "20"]);
    assert_eq!(v["all_agree"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 10 + 6 + 5 + 4);
}

#[test]
fn count_usage_and_guard_codes() {
    assert_eq!(
        kiselman(&["count", "-m", "7", "-n", "2"]).status.code(),
        Some(2)
    );
    assert!(kiselman(&["count", "-m", "7", "-n", "2", "--brute-only"])
        .status
        .success());
    assert_eq!(
        kiselman(&["count", "-m", "5", "-n", "6"]).status.code(),
        Some(3)
    );
    assert!(kiselman(&["count", "-m", "5", "-n", "30", "--closed-only"])
        .status
        .success());
    assert_eq!(kiselman(&["count"]).status.code(), Some(2));
    assert_eq!(kiselman(&["elements", "-n", "0"]).status.code(), Some(2));
}

#[test]
fn guard_environment_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_kiselman"))
        .args(["count", "-m", "3", "-n", "3"])
        .env("KISELMAN_GUARD_BITS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_kiselman"))
        .args(["elements", "-n", "4"])
        .env("KISELMAN_MAX_ELEMENTS", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_kiselman"))
        .args(["elements", "-n", "4"])
        .env("KISELMAN_MAX_RULES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "-n", "2", "--format", "json", "--no-timestamp"];
    let a = kiselman(&args);
    let b = kiselman(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("wall_time_ms").is_none());
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));

    let timed: Value =
        serde_json::from_slice(&kiselman(&["verify", "-n", "1", "-f", "json"]).stdout).unwrap();
    assert!(timed.get("wall_time_ms").is_some());
    assert!(timed.get("generated_at_unix").is_some());
}

#[test]
fn verify_units_suite() {
    let v = json(&["verify", "-n", "3", "--suite", "units", "--no-timestamp"]);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks
        .iter()
        .all(|c| c["suite"] == "units" && c["passed"] == true));
}

#[test]
fn export_tables() {
    let kn = json(&["export", "-n", "1", "--what", "kn-table"]);
    assert_eq!(kn["table"], serde_json::json!([[0, 1], [1, 1]]));

    let dn = json(&["export", "-n", "2", "--what", "dn-table"]);
    let table = dn["table"].as_array().unwrap();
    assert_eq!(table.len(), 15);
    assert!(table.iter().all(|row| row
        .as_array()
        .unwrap()
        .iter()
        .all(|i| i.as_u64().unwrap() < 15)));

    let endos = json(&["export", "-n", "3", "--what", "endos"]);
    assert_eq!(endos["endomorphisms"].as_array().unwrap().len(), 330);

    let rules = json(&["export", "-n", "2", "--what", "rules"]);
    assert_eq!(rules["rules"].as_array().unwrap().len(), 4);
    assert_eq!(rules["complete"], true);
}

#[test]
fn export_defaults_to_json_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("kiselman-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("elements.json");
    let out = kiselman(&[
        "export",
        "-n",
        "2",
        "--what",
        "elements",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], 5);
    std::fs::remove_dir_all(&dir).unwrap();

    let bad = kiselman(&[
        "export",
        "-n",
        "1",
        "--what",
        "rules",
        "-o",
        "/nonexistent/dir/x.json",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn export_table_guard() {
    assert_eq!(
        kiselman(&["export", "-n", "4", "--what", "dn-table"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn csv_has_header_and_dotted_words() {
    let out = kiselman(&["elements", "-n", "2", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,word,length,content,idempotent"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.contains(&"4,2.1,2,1.2,true"));
    assert!(rows.iter().all(|r| r.split(',').count() == 5));

    let out = kiselman(&["endos", "-n", "2", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("index,images,sequence,matrix\n"));
    assert!(text.lines().skip(1).all(|r| r.split(',').count() == 4));
}

#[test]
fn threads_flag_does_not_change_output() {
    let one = kiselman(&[
        "count",
        "--grid",
        "--max-bits",
        "16",
        "--threads",
        "1",
        "-f",
        "csv",
    ]);
    let two = kiselman(&[
        "count",
        "--grid",
        "--max-bits",
        "16",
        "--threads",
        "2",
        "-f",
        "csv",
    ]);
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
}
