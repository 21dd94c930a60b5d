//! End-to-end runs of the `ewmtool` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ewmtool::case::{load_case, parse_case};
use ewmtool::regress::compute_generators;

fn cases() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../cases")
}

fn case(name: &str) -> String {
    cases().join(format!("{name}.json")).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ewmtool")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch_dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ewmtool-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn generators_text() {
    let o = run(&["generators", &case("sph5S_g2_sl3")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("D1+    ω1       0"), "{s}");
    assert!(s.contains("D1-    ω1       -w1"), "{s}");
    assert!(s.contains("D2     ω2       -w1"), "{s}");
}

#[test]
fn generators_json_round_trips_through_the_case_encoding() {
    let o = run(&["--format", "json", "generators", &case("sph5S_g2_sl3")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let fixture = serde_json::json!({
        "schema": 1,
        "id": "round_trip",
        "citation": "sph5S",
        "kind": "table",
        "root_system": "G2",
        "p_char_basis": v["p_char_basis"],
        "generators": v["generators"],
    });
    let back = parse_case(&fixture.to_string(), "round_trip").unwrap();
    let orig = compute_generators(&load_case(Path::new(&case("sph5S_g2_sl3"))).unwrap()).unwrap();
    assert_eq!(back.expected.unwrap().pair_set(), orig.table.pair_set());
}

#[test]
fn missing_file_is_an_input_error() {
    let o = run(&["generators", "no/such/case.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no/such/case.json"));
}

#[test]
fn malformed_case_is_an_input_error() {
    let d = scratch_dir("malformed");
    let p = d.join("bad.json");
    std::fs::write(&p, "{\"schema\": 1, \"id\": ").unwrap();
    let o = run(&["generators", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn minimal_parabolic_subsets() {
    let o = run(&["subsets", &case("sph5S_g2_sl3"), "--kind", "parabolic", "--minimal"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().skip(1).collect();
    assert_eq!(rows.len(), 1, "{s}");
    assert!(rows[0].starts_with("{D1+, D2}"), "{s}");
}

#[test]
fn distinguished_subset_query() {
    let o = run(&["subsets", &case("sec8_spin8_n3"), "--kind", "distinguished", "--subset", "D3,D4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{D3, D4}  true"), "{}", stdout(&o));
}

#[test]
fn full_parabolic_enumeration() {
    let o = run(&["--format", "json", "subsets", &case("sph5S_g2_sl3"), "--kind", "parabolic"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let subsets: Vec<Vec<String>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| serde_json::from_value(x["subset"].clone()).unwrap())
        .collect();
    assert!(subsets.contains(&vec!["D1+".to_string(), "D2".to_string()]));
    assert!(subsets.iter().all(|s| s.len() >= 2));
}

#[test]
fn well_bottom_of_three_w1() {
    let o = run(&["well", &case("sph5S_g2_sl3"), "--chi", "3*w1", "--bottom"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("bottom: 3*ω1, 2*ω1 + ω2, ω1 + 2*ω2, 3*ω2"), "{s}");
    assert!(s.contains("d_chi = 4"), "{s}");
}

#[test]
fn well_of_zero_at_bound_zero() {
    let o = run(&["--format", "json", "well", &case("sph5S_g2_sl3"), "--chi", "0", "--bound", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let l = v["lambdas"].as_array().unwrap();
    assert_eq!(l.len(), 1);
    assert_eq!(l[0]["lambda"], serde_json::json!([0, 0]));
}

#[test]
fn well_of_w1_has_two_bottom_elements() {
    let o = run(&["well", &case("sph5S_g2_sl3"), "--chi", "1*w1", "--bound", "5", "--bottom"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d_chi = 2"), "{}", stdout(&o));
}

#[test]
fn bad_character_expression_is_an_input_error() {
    let o = run(&["well", &case("sph5S_g2_sl3"), "--chi", "3*w9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_no_mismatch() {
    let o = run(&["verify", &case("sph5S_g2_sl3"), "--chi", "1*w1", "--bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 mismatches"), "{}", stdout(&o));
}

#[test]
fn verify_flags_a_corrupted_table() {
    let d = scratch_dir("corrupt-table");
    let p = d.join("g2_table.json");
    let text = serde_json::json!({
        "schema": 1,
        "id": "g2_corrupted",
        "citation": "sph5S",
        "kind": "table",
        "root_system": "G2",
        "p_char_basis": ["w1", "w2"],
        "generators": [
            {"id": "D1+", "omega": [1, 0], "chi": "0"},
            {"id": "D1-", "omega": [1, 0], "chi": "-w1"},
            {"id": "D2", "omega": [0, 1], "chi": "0"}
        ],
        "branching_setup": {"h_root_system": "A2", "labels": ["w1", "w2"], "torus_map": ["w1", "w1 + w2"]},
        "well": {"h_colors": ["D1+"], "center_dim": 0, "fixtures": []}
    });
    std::fs::write(&p, text.to_string()).unwrap();
    let o = run(&["verify", p.to_str().unwrap(), "--chi", "w1", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("mismatch at"), "{}", stdout(&o));
}

#[test]
fn regress_corpus_passes() {
    let o = run(&["regress", cases().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn regress_reads_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ewmtool"))
        .arg("regress")
        .env("EWMTOOL_CASE_DIR", cases())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn regress_names_a_corrupted_case() {
    let d = scratch_dir("corrupt-case");
    let text = std::fs::read_to_string(case("sph5S_g2_sl3")).unwrap().replacen(
        "{\"id\": \"D1-\", \"omega\": [1, 0], \"chi\": \"-w1\"}",
        "{\"id\": \"D1-\", \"omega\": [1, 0], \"chi\": \"-3*w1\"}",
        1,
    );
    std::fs::write(d.join("g2.json"), text).unwrap();
    let o = run(&["--format", "json", "regress", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["cases"][0]["checks"].as_array().unwrap();
    let gen = checks.iter().find(|c| c["name"] == "generators").unwrap();
    assert_eq!(gen["passed"], false);
    assert!(gen["detail"].as_str().unwrap().contains("D1-"));
}

#[test]
fn empty_directory_is_an_input_error() {
    let d = scratch_dir("empty");
    let o = run(&["regress", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
