use std::path::PathBuf;
use std::process::{Command, Output};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().expect("forge runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fewcosine-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_writes_a_code_file_the_scheme_command_reads() {
    let path = scratch("nsc14.json");
    let o = forge(&["build", "NSC_14_64", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).contains("FAIL"));
    let o = forge(&["scheme", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("association scheme: yes"));
    assert!(text.contains("valencies [1, 14, 7, 42]"));
}

#[test]
fn csv_output_reads_back() {
    let path = scratch("dsc7.csv");
    let o = forge(&["build", "DSC_7_64", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 64);
    let o = forge(&["scheme", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("vectors 64 dimension 7"));
}

#[test]
fn corrupt_code_file_is_an_error() {
    let path = scratch("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(forge(&["scheme", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn cohomology_presets() {
    let o = forge(&["cohomology", "gl32-std3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("dim Z1 4"));
    assert!(text.contains("dim H1 1"));
    assert!(text.contains("noninner cocycles with kernel order 21: 8"));
    let o = forge(&["cohomology", "gl42-m6"]);
    assert!(stdout(&o).contains("noninner cocycles with kernel order 2520: 8"));
    assert_eq!(forge(&["cohomology", "gl9"]).status.code(), Some(1));
}

#[test]
fn verify_table_reports_every_row() {
    let o = forge(&["verify", "table1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("MISMATCH-WITH-ERRATUM NSC_15")).count(), 2);
    assert!(text.contains("PASS NSC_14_64"));
    let failed = text.lines().any(|l| l.starts_with("FAIL"));
    assert_eq!(o.status.success(), !failed);
}

#[test]
fn search_stops_at_the_hit_cap() {
    let o = forge(&["search", "--d", "4", "--subgroup", "nsc", "--max-hits", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 10);
    for l in &lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert!(v["cosines"].as_array().unwrap().len() <= 3);
    }
}

#[test]
fn search_finds_64_point_unions() {
    let o = forge(&["search", "--subgroup", "nsc"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.contains("\"size\":64")));
}

#[test]
fn binary_code_file() {
    let path = scratch("nr.hex");
    let o = forge(&["binary", "nordstrom", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("minimum distance 6"));
    let text = std::fs::read_to_string(&path).unwrap();
    let code = fewcosine::forge::io::parse_hex_words(&text, 16).unwrap();
    assert_eq!(code.len(), 256);
}

#[test]
fn binary_automorphisms_with_tiny_budget_hit_the_cap() {
    let o = forge(&["binary", "nordstrom", "--aut", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(forge(&["build"]).status.code(), Some(1));
    assert_eq!(forge(&["build", "NOPE"]).status.code(), Some(1));
    assert_eq!(forge(&["search", "--antipodal", "maybe"]).status.code(), Some(1));
    assert_eq!(forge(&["verify", "table2"]).status.code(), Some(1));
    assert_eq!(forge(&["build", "DSC_32_1024_K1"]).status.code(), Some(2));
}
