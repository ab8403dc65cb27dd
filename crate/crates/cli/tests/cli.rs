use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gesture_mapping::catalog::{builtin_catalog, ActivitySelection};
use serde_json::{json, Value};
use tempfile::TempDir;

fn gesture_map(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gesture-map")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(value).unwrap()).unwrap();
    p
}

fn demo() -> TempDir {
    let dir = TempDir::new().unwrap();
    let out = gesture_map(&["fixtures", path(dir.path())]);
    assert!(out.status.success(), "{}", stderr(&out));
    dir
}

fn small_spec() -> Value {
    json!({
        "dimensions": [
            {"name": "a", "values": ["x", "y"], "modalities": ["touch"]},
            {"name": "b", "values": ["p", "q", "r"], "modalities": ["touch"]}
        ],
        "object_relations": [{"kind": "none"}],
        "multiplicities": [{"points": 1, "hands": 1, "users": 1}]
    })
}

#[test]
fn enumerate_small_spec() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "spec.json", &small_spec());
    let out = gesture_map(&["enumerate", "--spec", path(&spec)]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "6 gestures");
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "touch:a=x,b=p/none/1p1h1u");
}

#[test]
fn malformed_spec_names_the_field() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "spec.json", &json!({"dimensions": [{"name": "a", "modalities": ["touch"]}]}));
    let out = gesture_map(&["enumerate", "--spec", path(&spec)]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("values"), "{}", stderr(&out));
}

#[test]
fn builtin_touch_count() {
    let out = gesture_map(&["enumerate", "--builtin", "touch", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "8320 gestures\n");
    let out = gesture_map(&["enumerate", "--builtin", "touch", "--count-only", "--format", "structured"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 8320);
}

#[test]
fn score_demo_mapping() {
    let dir = demo();
    let config = dir.path().join("config.json");
    let mapping = dir.path().join("mapping.json");
    let out = gesture_map(&["score", "--config", path(&config), "--mapping", path(&mapping), "--format", "structured"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["report"]["per_criterion"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let mean = rows.iter().map(|r| r["score"].as_f64().unwrap()).sum::<f64>() / 8.0;
    let q = v["report"]["aggregate"].as_f64().unwrap();
    assert!((q - mean).abs() < 1e-12);
    assert!((q - 0.4907738095238095).abs() < 1e-12);
}

#[test]
fn non_injective_mapping_is_rejected() {
    let dir = demo();
    let mut entries: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("mapping.json")).unwrap()).unwrap();
    let first = entries[0]["gesture_fingerprint"].clone();
    entries[1]["gesture_fingerprint"] = first;
    let mapping = write(dir.path(), "clash.json", &entries);
    let out = gesture_map(&["score", "--config", path(&dir.path().join("config.json")), "--mapping", path(&mapping)]);
    assert!(!out.status.success());
    let err = stderr(&out);
    assert!(err.contains("select-node") && err.contains("center-view"), "{err}");
    assert!(stdout(&out).is_empty());
}

fn optimize(config: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["optimize", "--config", path(config), "--format", "structured"];
    args.extend_from_slice(extra);
    gesture_map(&args)
}

#[test]
fn demo_optimum_and_local_search() {
    let dir = demo();
    let out = optimize(&dir.path().join("config.json"), &[]);
    assert!(out.status.success(), "{}", stderr(&out));
    let brute: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(brute["optimality"], "proven-optimal");
    assert_eq!(brute["iterations_used"], 332640);
    let best = brute["aggregate"].as_f64().unwrap();
    assert!((best - 0.6868235930735931).abs() < 1e-12);

    let local = write(
        dir.path(),
        "local.json",
        &json!({"catalog": "catalog.json", "spec": "spec.json", "weights": "weights.json",
                "solver": {"algorithm": "local-search", "restarts": 20}}),
    );
    let out = optimize(&local, &[]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["optimality"], "heuristic");
    assert!((v["aggregate"].as_f64().unwrap() - best).abs() <= 1e-9);
}

#[test]
fn infeasible_reports_both_cardinalities() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "spec.json", &small_spec());
    let config = write(dir.path(), "config.json", &json!({"catalog": "builtin:exploration", "spec": "spec.json"}));
    let tasks = builtin_catalog(ActivitySelection::Exploration).len();
    let out = gesture_map(&["optimize", "--config", path(&config)]);
    assert!(!out.status.success());
    let err = stderr(&out);
    assert!(err.contains(&format!("{tasks} tasks")) && err.contains("6 gestures"), "{err}");
}

#[test]
fn guard_reports_the_count() {
    let dir = demo();
    let config = write(
        dir.path(),
        "guarded.json",
        &json!({"catalog": "catalog.json", "spec": "spec.json", "solver": {"algorithm": "brute-force", "brute_force_guard": 1000}}),
    );
    let out = gesture_map(&["optimize", "--config", path(&config)]);
    assert!(!out.status.success());
    let err = stderr(&out);
    assert!(err.contains("332640") && err.contains("1000"), "{err}");
}

#[test]
fn structured_result_round_trips() {
    let dir = demo();
    let config = write(
        dir.path(),
        "anneal.json",
        &json!({"catalog": "catalog.json", "spec": "spec.json", "weights": "weights.json",
                "solver": {"algorithm": "anneal", "max_iterations": 2000}}),
    );
    let out = optimize(&config, &["--seed", "11"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let result: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(result["seed"], 11);
    let mapping = write(dir.path(), "found.json", &result["mapping"]);
    let out = gesture_map(&["score", "--config", path(&config), "--mapping", path(&mapping), "--format", "structured"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let scored: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(scored["report"], result["report"]);
    assert_eq!(
        scored["report"]["aggregate"].as_f64().unwrap().to_bits(),
        result["aggregate"].as_f64().unwrap().to_bits()
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = demo();
    let config = write(
        dir.path(),
        "anneal.json",
        &json!({"catalog": "catalog.json", "spec": "spec.json", "solver": {"algorithm": "anneal", "restarts": 3, "seed": 9}}),
    );
    let a = optimize(&config, &[]);
    let b = optimize(&config, &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = optimize(&config, &["--seed", "10"]);
    let v: Value = serde_json::from_str(&stdout(&other)).unwrap();
    assert_eq!(v["seed"], 10);
}

#[test]
fn unknown_config_field_is_an_error() {
    let dir = TempDir::new().unwrap();
    let config = write(dir.path(), "config.json", &json!({"spec": "builtin:pen", "solvr": {}}));
    let out = gesture_map(&["enumerate", "--config", path(&config), "--count-only"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("solvr"));
    let config = write(dir.path(), "config.json", &json!({"spec": "builtin:pen"}));
    let out = gesture_map(&["enumerate", "--config", path(&config), "--count-only"]);
    assert_eq!(stdout(&out), "640 gestures\n");
}
