use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn coxmut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxmut")).args(args).env_remove("COXMUT_CAPS").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn mutate_path_gives_triangle() {
    let out = coxmut(&["mutate", "-i", data("a3path.json").to_str().unwrap(), "-k", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out), serde_json::json!({"n": 3, "b": [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]}));
}

#[test]
fn mutate_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = coxmut(&["mutate", "-i", data("a3path.json").to_str().unwrap(), "-k", "2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let back = coxmut(&["mutate", "-i", path.to_str().unwrap(), "-k", "2"]);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(data("a3path.json")).unwrap()).unwrap();
    assert_eq!(json(&back), original);
}

#[test]
fn invalid_vertex_exits_one() {
    let out = coxmut(&["mutate", "-i", data("a3path.json").to_str().unwrap(), "-k", "7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"n\": 2, \"b\": [[0, 1], [1, 0]]}").unwrap();
    assert_eq!(coxmut(&["classify", "-i", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn analyze_reports_cusps() {
    let out = coxmut(&["analyze", "-i", data("a4q1.json").to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["cusps"], 5);
    assert_eq!(report["group_order"], 120);
    assert_eq!(report["dimension"], 3);
    assert!(report["canonical_key"].is_string());
}

#[test]
fn analyze_is_deterministic() {
    let input = data("b3g1.json");
    let args = ["analyze", "-i", input.to_str().unwrap(), "--json"];
    let (first, second) = (coxmut(&args), coxmut(&args));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let report = json(&first);
    assert_eq!(report["chi_X"], -4);
    assert_eq!(report["genus"], 3);
    assert_eq!(report["volume"], serde_json::json!({"coeff_num": 8, "coeff_den": 1, "pi_power": 1}));
}

#[test]
fn analyze_text_summary() {
    let out = coxmut(&["analyze", "-i", data("a4q1.json").to_str().unwrap()]);
    assert!(stdout(&out).contains("cusps           5"));
}

#[test]
fn classify_complete_graph_is_infinite() {
    let out = coxmut(&["classify", "-i", data("k4.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["type"], "MutationInfinite");
}

#[test]
fn custom_realization_is_verified() {
    let out = coxmut(&["verify", "-i", data("k4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["torsion_free"], true);
    let report = json(&coxmut(&["analyze", "-i", data("k4.json").to_str().unwrap(), "--json"]));
    assert_eq!(report["cusps"], 20);
    assert_eq!(report["quotient_order"], serde_json::json!({"result": "exact", "order": 120}));
}

#[test]
fn wrong_custom_roots_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4bad.json");
    let mut input: Value = serde_json::from_str(&std::fs::read_to_string(data("k4.json")).unwrap()).unwrap();
    input["realization"]["roots"] = serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    std::fs::write(&path, input.to_string()).unwrap();
    let out = coxmut(&["verify", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["torsion_free"], false);
}

#[test]
fn cap_exceeded_exits_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_coxmut"))
        .args(["class", "-i", data("a4q1.json").to_str().unwrap(), "--max", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let inconclusive = Command::new(env!("CARGO_BIN_EXE_coxmut"))
        .args(["verify", "-i", data("a4q1.json").to_str().unwrap()])
        .env("COXMUT_CAPS", "max_size=1")
        .output()
        .unwrap();
    assert_eq!(inconclusive.status.code(), Some(3));
}

#[test]
fn class_lists_members() {
    let out = coxmut(&["class", "-i", data("a3path.json").to_str().unwrap()]);
    assert!(out.status.success());
    let class = json(&out);
    assert_eq!(class["size"], 4);
    assert_eq!(class["status"]["status"], "Complete");
}

#[test]
fn present_with_extra_relators() {
    let dir = tempfile::tempdir().unwrap();
    let rels = dir.path().join("rels.txt");
    std::fs::write(&rels, "# one relator\nrel 1 2 3 2 ^ 2\n").unwrap();
    let out = coxmut(&["present", "-i", data("a3path.json").to_str().unwrap(), "--extra", rels.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("gens 3\n"));
    assert!(text.contains("pow 1 2 3\n"));
    assert!(text.contains("rel 1 2 3 2 ^ 2\n"));
}

#[test]
fn present_triangle_has_cycle_relator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.json");
    std::fs::write(&path, stdout(&coxmut(&["mutate", "-i", data("a3path.json").to_str().unwrap(), "-k", "2"]))).unwrap();
    let text = stdout(&coxmut(&["present", "-i", path.to_str().unwrap()]));
    assert!(text.lines().any(|l| l.starts_with("cyc ") && l.ends_with("^ 2")), "{text}");
}

#[test]
fn bad_caps_variable_exits_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_coxmut"))
        .args(["classify", "-i", data("a3path.json").to_str().unwrap()])
        .env("COXMUT_CAPS", "nonsense")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_two_check_passes() {
    let out = coxmut(&["tables", "--check", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);
}
