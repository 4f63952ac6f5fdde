use std::process::{Command, Output};

use serde_json::Value;

fn deltop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = deltop(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn groups(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("group list")
        .iter()
        .map(|g| g["group"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn homology_of_rp2() {
    let r = json(&["homology", "catalog:rp2"]);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "homology");
    assert_eq!(groups(&r["result"]["groups"]), ["Z", "Z_2", "0"]);
}

#[test]
fn gysin_on_the_octahedron_is_exact() {
    let r = json(&["gysin", "catalog:octahedron", "--coeff", "Z", "--phi", "+"]);
    assert_eq!(r["result"]["exactness"], "PASS");
    let nodes = r["result"]["nodes"].as_array().unwrap();
    assert!(!nodes.is_empty() && nodes.iter().all(|n| n["verdict"] == "PASS"));
    // Rows: H(RP²; Z_-), H(S²; Z), H(RP²; Z) in degrees 0, 1, 2.
    let table = r["result"]["table"].as_array().unwrap();
    let row = |p: usize, key: &str| table[p][key].as_str().unwrap().to_string();
    assert_eq!([row(0, "minus"), row(1, "minus"), row(2, "minus")], ["0", "Z_2", "Z"]);
    assert_eq!([row(0, "cover"), row(1, "cover"), row(2, "cover")], ["Z", "0", "Z"]);
    assert_eq!([row(0, "plus"), row(1, "plus"), row(2, "plus")], ["Z", "0", "Z_2"]);
    // Z is not uniquely 2-divisible, so no splitting claim.
    assert!(r["result"]["splitting"].is_null());
}

#[test]
fn gysin_with_odd_coefficients_reports_splitting() {
    let r = json(&["gysin", "catalog:sphere:1", "--coeff", "Zm:5", "--phi", "-"]);
    assert_eq!(r["result"]["exactness"], "PASS");
    assert_eq!(r["result"]["splitting"]["holds"], true);
}

#[test]
fn flagship_needs_heavy() {
    let out = deltop(&["embed-check", "catalog:poincare_punctured", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--heavy"));
}

#[test]
fn flagship_map_exists() {
    let r = json(&["embed-check", "catalog:poincare_punctured", "--m", "3", "--heavy"]);
    assert_eq!(r["result"]["verdict"], "MAP_EXISTS");
    assert_eq!(groups(&r["result"]["groups"]), ["0", "0", "0", "0"]);
    assert!(r["result"]["note"].as_str().unwrap().contains("does not imply"));
}

#[test]
fn tight_budget_aborts() {
    let out = deltop(&["embed-check", "catalog:poincare_punctured", "--m", "3", "--heavy", "--time-budget", "0.001"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn circle_is_obstructed_in_the_line() {
    let r = json(&["embed-check", "catalog:sphere:1", "--m", "1"]);
    assert_eq!(r["result"]["verdict"], "NO_EQUIVARIANT_MAP");
    assert_eq!(r["result"]["index"], 1);
}

#[test]
fn unknown_is_a_computed_verdict() {
    // Two disjoint circles: the swapped pair of tori carries H^2 = Z^2, while
    // the index of the deleted product is only 1.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circles.txt");
    std::fs::write(&path, "facet a b\nfacet b c\nfacet a c\nfacet x y\nfacet y z\nfacet x z\n").unwrap();
    let r = json(&["embed-check", path.to_str().unwrap(), "--m", "2"]);
    assert_eq!(r["result"]["verdict"], "UNKNOWN");
    assert_eq!(r["result"]["index"], 1);
    assert_eq!(groups(&r["result"]["groups"]), ["Z^2"]);
}

#[test]
fn input_errors_exit_nonzero() {
    for args in [
        vec!["homology", "catalog:torus"],
        vec!["homology", "/nonexistent/file.txt"],
        vec!["gysin", "catalog:octahedron", "--coeff", "Q"],
        vec!["gysin", "catalog:octahedron", "--phi", "x"],
        vec!["embed-check", "catalog:sphere:1", "--m", "0"],
        vec!["quotient", "catalog:sphere:2", "--involution", "0=1"],
        vec!["frobnicate"],
    ] {
        let out = deltop(&args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(out.stdout.is_empty(), "{args:?} printed a report");
    }
}

#[test]
fn reports_are_deterministic() {
    let a = deltop(&["twisted", "catalog:rp2", "--coeff", "Zm:3", "--phi", "-"]);
    let b = deltop(&["twisted", "catalog:rp2", "--coeff", "Zm:3", "--phi", "-"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_and_json_carry_the_same_groups() {
    let r = json(&["cohomology", "catalog:rp2", "--coeff", "Z"]);
    let out = deltop(&["cohomology", "catalog:rp2", "--coeff", "Z", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for g in r["result"]["groups"].as_array().unwrap() {
        let line = format!("degree: {}, group: {}", g["degree"], g["group"].as_str().unwrap());
        assert!(text.contains(&line), "missing `{line}` in\n{text}");
    }
}

#[test]
fn deleted_product_document() {
    let r = json(&["deleted-product", "catalog:simplex:2"]);
    assert_eq!(r["result"]["f_vector"], serde_json::json!([6, 6]));
    assert_eq!(r["result"]["cells"].as_array().unwrap().len(), 12);
    let text = String::from_utf8(deltop(&["deleted-product", "catalog:simplex:2", "--format", "text"]).stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("cell ")).count(), 12);
}

#[test]
fn file_input_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rp2.txt");
    let export = deltop(&["catalog", "rp2", "--export"]);
    let text = String::from_utf8(export.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("facet ")));
    assert_eq!(text.lines().count(), 10);
    let facets = text;
    std::fs::write(&path, facets).unwrap();
    let r = json(&["homology", path.to_str().unwrap()]);
    assert_eq!(groups(&r["result"]["groups"]), ["Z", "Z_2", "0"]);
}

#[test]
fn quotient_halves_euler_characteristic() {
    let r = json(&["quotient", "catalog:octahedron"]);
    assert_eq!(r["result"]["quotient_f_vector"], serde_json::json!([3, 6, 4]));
    assert_eq!(r["result"]["euler_halves"], true);
    assert_eq!(groups(&r["result"]["quotient_homology"]), ["Z", "Z_2", "0"]);
}

#[test]
fn lemma1_and_connectivity() {
    let r = json(&["lemma1", "catalog:simplex:3", "catalog:simplex:3", "--l", "1"]);
    assert_eq!(r["result"]["verdict"], "PASS");
    let c = json(&["connectivity", "catalog:poincare_punctured"]);
    assert_eq!(c["result"]["d_max"], 2);
    assert_eq!(c["result"]["closed"], false);
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_deltop"))
        .args(["homology", "catalog:sphere:2"])
        .env("DELTOP_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_deltop"))
        .args(["homology", "catalog:sphere:2"])
        .env("DELTOP_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_listing() {
    let r = json(&["catalog"]);
    let ids: Vec<&str> = r["result"]["entries"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"poincare_punctured") && ids.contains(&"simplex:4"));
    let e = json(&["catalog", "poincare16"]);
    assert_eq!(e["result"]["f_vector"], serde_json::json!([16, 106, 180, 90]));
}
