use std::path::PathBuf;
use std::process::{Command, Output};

use ellgal::render::parse_census_json;
use ellgal::{component_census, JClass};

fn ellgal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellgal")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ellgal(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn tests_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

#[test]
fn census_tables_match_golden() {
    for big_n in 2..=5 {
        for (j, tag) in [("generic", "generic"), ("0", "j0"), ("1728", "j1728")] {
            let path = tests_dir().join("golden").join(format!("table_N{big_n}_{tag}.txt"));
            let expected = std::fs::read_to_string(&path).unwrap();
            let got = stdout(&["census", "--N", &big_n.to_string(), "--j", j]);
            assert_eq!(got, expected, "{}", path.display());
        }
    }
}

#[test]
fn n_and_big_n_agree() {
    assert_eq!(stdout(&["census", "--n", "6", "--j", "0"]), stdout(&["census", "--N", "5", "--j", "0"]));
}

#[test]
fn csv_rows() {
    assert_eq!(stdout(&["census", "--N", "2", "--format", "csv"]), "dimension,count,group_order\n1,1,2\n");
    let csv = stdout(&["census", "--N", "3", "--j", "1728", "--format", "csv"]);
    assert!(csv.lines().any(|l| l == "0,14,4"), "{csv}");
}

#[test]
fn json_round_trips() {
    for j in JClass::ALL {
        for n in 3..=12 {
            let text = stdout(&["census", "--n", &n.to_string(), "--j", j.as_str(), "--format", "json"]);
            let parsed = parse_census_json(&text).unwrap();
            assert_eq!(parsed, component_census(j, n).unwrap());
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["census", "--N", "11", "--j", "0", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    assert_eq!(stdout(&["verify"]), stdout(&["verify"]));
}

#[test]
fn psi_values() {
    assert_eq!(stdout(&["psi", "--ell", "2", "--m", "12"]), "28\n");
    assert_eq!(stdout(&["psi", "--ell", "3", "--m", "7", "--j", "0"]), "2\n");
    assert_eq!(stdout(&["psi", "--ell", "4", "--m", "15", "--j", "1728"]), "0\n");
    assert_eq!(stdout(&["psi", "--ell", "4", "--m", "5"]), "0\n");
    let explain = stdout(&["psi", "--ell", "3", "--m", "28", "--j", "0", "--explain"]);
    assert!(explain.contains("2^2: 1") && explain.contains("7^1: 2"), "{explain}");
}

#[test]
fn subgroups_count_and_list() {
    assert_eq!(stdout(&["subgroups", "--ell", "2", "--m", "4"]), "7\n");
    assert_eq!(stdout(&["subgroups", "--ell", "3", "--m", "3", "--list"]), "(1,2) (0,0)\n");
    assert_eq!(stdout(&["subgroups", "--ell", "4", "--m", "5", "--list"]).lines().count(), 2);
}

#[test]
fn disjoint_totals() {
    assert!(stdout(&["disjoint", "--n", "4", "--j", "1728"]).starts_with("disjoint Galois subspaces: 14\n"));
    assert!(stdout(&["disjoint", "--N", "5", "--j", "0"]).starts_with("disjoint Galois subspaces: 48\n"));
    assert_eq!(stdout(&["disjoint", "--n", "5"]), "disjoint Galois subspaces: 0\n");
}

#[test]
fn verify_passes() {
    let out = stdout(&["verify", "--with-curves"]);
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn corrupted_table_exits_two() {
    let fixture = tests_dir().join("fixtures").join("corrupt_psi.csv");
    let out = ellgal(&["verify", "--psi-override", fixture.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("oracle-equivalence") && stderr.contains("ell=4 m=9"), "{stderr}");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["census", "--n", "2"][..],
        &["census", "--n", "4", "--N", "3"],
        &["census"],
        &["census", "--n", "4", "--j", "7"],
        &["census", "--n", "4", "--format", "xml"],
        &["psi", "--ell", "5", "--m", "3"],
        &["psi", "--ell", "2", "--m", "0"],
        &["subgroups", "--ell", "2", "--m", "600"],
        &["verify", "--psi-override", "/nonexistent/file.csv"],
        &["frobnicate"],
    ] {
        let out = ellgal(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert!(ellgal(&["--help"]).status.success());
    assert!(ellgal(&["census", "--help"]).status.success());
}
