use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn sarkisov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sarkisov")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_an_emitted_case() {
    let dir = tempfile::tempdir().unwrap();
    let case = sarkisov(&["gallery", "--i", "2", "--j", "2", "--format", "json"]);
    assert_eq!(case.status.code(), Some(0));
    let path = write(dir.path(), "xij_2_2.json", &json(&case));
    let o = sarkisov(&["classify", "--input", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("cA(5)"));
    let j = json(&sarkisov(&["classify", "--input", &path, "--format", "json"]));
    assert_eq!(j["verdict"], "cA(5)");
    assert_eq!(j["tool_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn germ_json_input() {
    let dir = tempfile::tempdir().unwrap();
    let germ = serde_json::json!({"vars": ["x", "y", "z", "t"], "poly": "x^2 + y^2 + z^3 + t^3"});
    let path = write(dir.path(), "germ.json", &germ);
    let o = sarkisov(&["classify", "--input", &path]);
    assert_eq!(stdout(&o).lines().next(), Some("cA(2)"));
    let j = json(&sarkisov(&["milnor", "--input", &path, "--format", "json"]));
    assert_eq!(j["agree"], true);
    for r in j["routes"].as_array().unwrap() {
        assert_eq!(r["mu"], 4, "{}", r);
    }
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json at all").unwrap();
    let o = sarkisov(&["milnor", "--input", garbage.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    let missing = dir.path().join("absent.json");
    assert_eq!(sarkisov(&["classify", "--input", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(sarkisov(&["classify", "--case", "cD4", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(sarkisov(&["classify", "--i", "2"]).status.code(), Some(2));
    assert_eq!(sarkisov(&["gallery", "--i", "4", "--j", "0"]).status.code(), Some(2));
    assert_eq!(sarkisov(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sarkisov(&["tables"]).status.code(), Some(2));
    assert_eq!(sarkisov(&["tables", "--which", "table3"]).status.code(), Some(2));
}

#[test]
fn milnor_by_route() {
    let o = sarkisov(&["milnor", "--i", "2", "--j", "2", "--oracle", "formula"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "formula  25");
    let j = json(&sarkisov(&["milnor", "--i", "2", "--j", "2", "--oracle", "jet", "--format", "json"]));
    assert_eq!(j["routes"][0]["mu"], 25);
}

#[test]
fn ca6_link_from_emitted_system() {
    let dir = tempfile::tempdir().unwrap();
    let case = json(&sarkisov(&["gallery", "--i", "3", "--j", "1", "--format", "json"]));
    let system = &case["systems"][0]["system"];
    assert_eq!(case["systems"][0]["weights"], "(5,2,1,1)");
    let path = write(dir.path(), "ca6.json", system);

    let text = sarkisov(&["link", "--input", &path]);
    assert_eq!(text.status.code(), Some(0));
    let text = stdout(&text);
    assert!(text.starts_with("X^{3,1}"));
    let diagram: Vec<&str> = text.lines().skip(1).take(5).collect();
    assert!(diagram[0].starts_with("Z0 --2 flops-") && diagram[0].ends_with("> Z1"), "{}", diagram[0]);
    assert!(diagram[2].starts_with("| divisorial a=1") && diagram[2].ends_with("| divisorial a=1"));

    let dot = stdout(&sarkisov(&["link", "--input", &path, "--format", "dot"]));
    let edges = dot.matches("->").count();
    assert_eq!(edges, 3);
    assert_eq!(dot.matches("[label=").count() - edges, 4);

    // the emitted system re-runs to the same report, byte for byte
    let a = sarkisov(&["link", "--input", &path, "--format", "json"]);
    let b = sarkisov(&["link", "--i", "3", "--j", "1", "--format", "json"]);
    assert_eq!(a.stdout, sarkisov(&["link", "--input", &path, "--format", "json"]).stdout);
    assert_eq!(json(&a)["links"][0], json(&b)["links"][0]);
    assert_eq!(json(&a)["links"][0]["endpoint"], json(&b)["links"][0]["endpoint"]);
}

#[test]
fn tworay_walls() {
    let j = json(&sarkisov(&["tworay", "--case", "cA7", "--format", "json"]));
    let walls = j["walls"].as_array().unwrap();
    assert_eq!(walls.len(), 3);
    assert_eq!(walls[0]["kind"]["type"], "divisorial");
    assert_eq!(walls[2]["kind"]["type"], "fibration");
    assert_eq!(walls[2]["target_weights"], serde_json::json!([1, 1, 2, 2]));
    assert!(j["tool_version"].is_string());
}

#[test]
fn table1_json_shape() {
    let o = sarkisov(&["tables", "--which", "table1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for r in rows {
        for k in ["i", "j", "expected_n", "computed_n", "match"] {
            assert!(r.get(k).is_some(), "{} missing", k);
        }
        assert_eq!(r["match"], true);
    }
}

#[test]
fn table2_flags_the_bad_link() {
    let o = sarkisov(&["tables", "--which", "table2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.matches("flagged as expected (bad link)").count(), 1);
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["gallery", "--case", "antiflip-cA2", "--format", "json"][..],
        &["link", "--case", "cE8", "--format", "json"][..],
        &["tables", "--which", "bounds", "--format", "json"][..],
    ] {
        assert_eq!(sarkisov(args).stdout, sarkisov(args).stdout, "{:?}", args);
    }
}
