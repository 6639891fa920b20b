use std::path::Path;
use std::process::{Command, Output};

use zs_core::rational::q;
use zs_core::spectral::{certify, Certificate, ScanReport};

fn zs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zs"))
        .args(args)
        .env_remove("ZS_CACHE_DIR")
        .output()
        .expect("zs runs")
}

fn zs_cached(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zs"))
        .args(args)
        .env("ZS_CACHE_DIR", dir)
        .output()
        .expect("zs runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn certify_pretty_ends_with_the_bound() {
    let out = zs(&["certify", "--n", "4", "--t", "1", "--format", "pretty"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("VALID: bound 15"));
}

#[test]
fn certify_json_round_trips() {
    let out = zs(&["certify", "--n", "4", "--t", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"zeta\": \"-1/6\""));
    let parsed: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, certify(4, 1).unwrap());
    assert_eq!(parsed.eigenvalues.values().nth(1), Some(&q(-1, 6)));
}

#[test]
fn no_floats_in_json() {
    let out = zs(&["certify", "--n", "6", "--t", "2", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    fn walk(v: &serde_json::Value) {
        match v {
            serde_json::Value::Number(n) => assert!(!n.is_f64(), "float {n}"),
            serde_json::Value::Array(a) => a.iter().for_each(walk),
            serde_json::Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    walk(&value);
}

#[test]
fn invalid_certificate_exits_2() {
    let out = zs(&["certify", "--n", "8", "--t", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let parsed: Certificate = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!parsed.valid);
}

#[test]
fn error_exit_codes() {
    assert_eq!(zs(&["certify", "--n", "4", "--t", "2"]).status.code(), Some(1));
    assert_eq!(zs(&["matchings", "--n", "9"]).status.code(), Some(1));
    assert_eq!(zs(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(zs(&["certify", "--n", "four", "--t", "1"]).status.code(), Some(64));
    assert_eq!(zs(&["matrix", "--kind", "alpha-kostka", "--n", "3", "--alpha", "x"]).status.code(), Some(64));
    assert_eq!(zs(&["--help"]).status.code(), Some(0));
}

#[test]
fn zonal_csv_times_valencies_is_the_p_table() {
    let zonal = stdout(&zs(&["matrix", "--kind", "zonal", "--n", "4", "--format", "csv"]));
    let lines: Vec<&str> = zonal.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "\"\",\"4\",\"3,1\",\"2,2\",\"2,1,1\",\"1,1,1,1\"");
    let valencies = [48, 32, 12, 12, 1];
    let expected = [
        [48, 32, 12, 12, 1],
        [-8, 4, -2, 5, 1],
        [-2, -8, 7, 2, 1],
        [4, -2, -2, -1, 1],
        [-6, 8, 3, -6, 1],
    ];
    for (i, line) in lines[1..].iter().enumerate() {
        // labels are quoted and contain commas; the five entries are the tail
        let fields: Vec<&str> = line.rsplitn(6, ',').collect();
        for j in 0..5 {
            let entry = zs_core::rational::parse(fields[4 - j]).unwrap();
            assert_eq!(entry * q(valencies[j], 1), q(expected[i][j], 1), "row {i} col {j}");
        }
    }
    let p = stdout(&zs(&["scheme", "--n", "4", "--emit", "p-table"]));
    assert!(p.contains("\"2,2\",-2,-8,7,2,1"));
}

#[test]
fn scheme_json_nests_eigenspace_then_sphere() {
    let out = zs(&["scheme", "--n", "4", "--emit", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["3,1"]["2,1,1"], "5");
    assert_eq!(v["4"]["4"], "48");
    assert_eq!(zs(&["scheme", "--n", "3", "--verify"]).status.code(), Some(0));
}

#[test]
fn derange_counts() {
    assert_eq!(stdout(&zs(&["derange", "--n", "4", "--t", "1"])).trim(), "60");
    assert_eq!(stdout(&zs(&["derange", "--n", "3", "--t", "1"])).trim(), "8");
}

#[test]
fn scan_csv_and_json() {
    let csv = stdout(&zs(&["scan", "--t", "1", "--n-min", "4", "--n-max", "6"]));
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().nth(1).unwrap().starts_with("4,1,true,-1/6"));
    let out = zs(&["scan", "--t", "2", "--n-min", "6", "--n-max", "7", "--format", "json"]);
    let report: ScanReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.rows.len(), 2);
}

#[test]
fn brute_skips_when_proven_and_searches_on_request() {
    let skipped: serde_json::Value =
        serde_json::from_str(&stdout(&zs(&["brute", "--n", "4", "--t", "1"]))).unwrap();
    assert_eq!(skipped["searched"], false);
    assert_eq!(skipped["optimum"], 15);
    let run = |seed: &str| stdout(&zs(&["brute", "--n", "4", "--t", "1", "--force-brute", "--seed", seed]));
    let forced: serde_json::Value = serde_json::from_str(&run("3")).unwrap();
    assert_eq!(forced["searched"], true);
    assert_eq!(forced["optimum"], 15);
    assert_eq!(forced["matchesCanonical"], true);
    assert_eq!(forced["crossProduct"]["seed"], 3);
    assert_eq!(run("3"), run("3"));
    let small: serde_json::Value =
        serde_json::from_str(&stdout(&zs(&["brute", "--n", "3", "--t", "2"]))).unwrap();
    assert_eq!(small["optimum"], 1);
}

#[test]
fn oracle_agrees() {
    let out = zs(&["oracle", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("\"\",\"3\",\"2,1\",\"1,1,1\""));
}

#[test]
fn listings() {
    let m = stdout(&zs(&["matchings", "--n", "3"]));
    assert_eq!(m.lines().count(), 16);
    assert!(m.lines().nth(1).unwrap().starts_with("1 2|3 4|5 6,\"1,1,1\""));
    let near = stdout(&zs(&["matchings", "--n", "3", "--near"]));
    assert_eq!(near.lines().count(), 16);
    let p = stdout(&zs(&["partitions", "--n", "4", "--t", "1"]));
    assert_eq!(p.lines().nth(2).unwrap(), "\"3,1\",\"2,1,1\",3,20,32,true");
}

#[test]
fn warm_and_cold_cache_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["certify", "--n", "6", "--t", "2", "--format", "json"],
        &["matrix", "--kind", "alpha-kostka", "--n", "5", "--alpha", "3/2"],
        &["matrix", "--kind", "zonal", "--n", "6", "--format", "json"],
        &["scan", "--t", "1", "--n-min", "4", "--n-max", "7"],
    ];
    for args in cases {
        let uncached = zs(args);
        let cold = zs_cached(args, dir.path());
        let warm = zs_cached(args, dir.path());
        assert_eq!(cold.stdout, uncached.stdout, "{args:?}");
        assert_eq!(warm.stdout, cold.stdout, "{args:?}");
        assert_eq!(warm.status.code(), cold.status.code());
    }
    assert!(dir.path().join("zonal-n6.zsc").exists());
    assert!(dir.path().join("alpha-kostka-n5-a3_2.zsc").exists());

    // a corrupted entry is recomputed, not trusted
    let path = dir.path().join("zonal-n6.zsc");
    let mut bytes = std::fs::read(&path).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0xff;
    std::fs::write(&path, bytes).unwrap();
    let args = cases[2];
    assert_eq!(zs_cached(args, dir.path()).stdout, zs(args).stdout);
}

#[test]
fn cache_dir_flag_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let out = zs(&["--cache-dir", dir_arg, "matrix", "--kind", "kostka", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("kostka-n4.zsc").exists());
}
