use std::process::{Command, Output};

use orthoscheme_core::rational::{format_rational, parse_rational};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthoscheme"))
        .args(args)
        .env_remove("ORTHOSCHEME_SEED")
        .output()
        .expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn find<'a>(rows: &'a [Value], pairs: &[(&str, u64)]) -> &'a Value {
    rows.iter()
        .find(|r| pairs.iter().all(|(k, v)| r[*k] == *v))
        .unwrap_or_else(|| panic!("no row {pairs:?}"))
}

#[test]
fn table_examples() {
    let out = bin(&["tables", "stirling1", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(find(&lines(&out), &[("n", 4), ("k", 2)])["value"], "11");
    let out = bin(&["tables", "orthoscheme", "--n", "2"]);
    assert_eq!(find(&lines(&out), &[("n", 2), ("j", 0), ("k", 2)])["value"], "1/2");
    let out = bin(&["tables", "weyl-b", "--n", "2"]);
    assert_eq!(find(&lines(&out), &[("n", 2), ("j", 1), ("k", 1)])["value"], "1");
}

#[test]
fn exact_values_round_trip() {
    for family in ["stirling2-b", "r-stirling1", "intrinsic-b", "orthoscheme-a", "weyl-a", "recovery", "expected-faces"] {
        let out = bin(&["tables", family, "--n", "6", "--r", "3/2", "--source", "KA"]);
        assert!(out.status.success(), "{family}");
        for row in lines(&out) {
            let s = row["value"].as_str().unwrap();
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }
}

#[test]
fn csv_has_a_header() {
    let out = bin(&["tables", "stirling2", "--n", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut it = text.lines();
    assert_eq!(it.next(), Some("family,n,k,value"));
    assert!(text.lines().any(|l| l == "stirling2,3,2,3"));
}

#[test]
fn invalid_ranges_are_usage_errors() {
    let out = bin(&["tables", "weyl-a", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["mc", "recovery", "--source", "WB", "--n", "2", "--j", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["mc", "volumes", "--spec", "C3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["tables", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mc_examples() {
    let out = bin(&["mc", "faces", "--d", "2", "--n", "3", "--j", "0", "--samples", "4000"]);
    assert!(out.status.success());
    let rows = lines(&out);
    assert_eq!(rows[0]["exact"], "11/3");
    assert!(rows[0]["z"].as_f64().unwrap().abs() <= 4.0);

    let out = bin(&["mc", "volumes", "--spec", "A2xB2", "--samples", "20000"]);
    let rows = lines(&out);
    assert_eq!(rows.len(), 5);
    let total: f64 = rows.iter().map(|r| r["estimate"].as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);

    let out = bin(&["mc", "recovery", "--source", "WB", "--n", "2", "--j", "0", "--k", "2", "--samples", "1000"]);
    let rows = lines(&out);
    assert_eq!(rows[0]["exact"], "1");
    assert_eq!(rows[0]["estimate"], 1.0);

    let out = bin(&["mc", "angles", "--blocks", "1,1,1", "--samples", "20000"]);
    assert_eq!(lines(&out)[0]["exact"], "1/6");
    let out = bin(&["mc", "angles", "--spec", "B3", "--samples", "20000"]);
    assert_eq!(lines(&out).len(), 4);
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = std::env::temp_dir().join(format!("orthoscheme-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str, threads: &str, seed: &str| {
        let path = dir.join(name);
        let p = path.to_str().unwrap();
        let out = bin(&["mc", "volumes", "--spec", "B3", "--samples", "5000", "--seed", seed, "--threads", threads, "--format", "csv", "--out", p]);
        assert!(out.status.success());
        std::fs::read(&path).unwrap()
    };
    let a = run("a.csv", "1", "5");
    assert_eq!(a, run("b.csv", "3", "5"));
    assert_ne!(a, run("c.csv", "1", "6"));
    let env = Command::new(env!("CARGO_BIN_EXE_orthoscheme"))
        .args(["mc", "volumes", "--spec", "B3", "--samples", "5000", "--threads", "1", "--format", "csv"])
        .env("ORTHOSCHEME_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a);
    std::fs::remove_dir_all(&dir).ok();
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/verify-report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn verify_passes_and_matches_the_schema() {
    let out = bin(&["verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(schema().is_valid(&report));
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 11);
}

#[test]
fn injected_fault_is_named() {
    let out = bin(&["verify", "--inject-fault", "stirling1", "--samples", "2000"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gf-oracle/stirling1"));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(schema().is_valid(&report));
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["gf-oracle/stirling1"]);
}
