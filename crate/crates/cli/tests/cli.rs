use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hdx_core::cohomology::cohomology_classes;
use hdx_core::generators::rp2_six;
use hdx_core::io::write_cochain;
use hdx_core::DEFAULT_BUDGET;
use serde_json::Value;
use tempfile::TempDir;

fn hdx(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdx")).args(args).current_dir(dir).env_remove("HDX_BUDGET").output().unwrap()
}

fn rp2(dir: &TempDir) -> PathBuf {
    let out = hdx(&["generate", "--kind", "rp2_6", "-o", "rp2.cplx"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    dir.path().join("rp2.cplx")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn checks_named<'a>(r: &'a Value, prefix: &str) -> Vec<&'a Value> {
    r["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with(prefix)).collect()
}

#[test]
fn verify_all_on_rp2_passes() {
    let dir = TempDir::new().unwrap();
    rp2(&dir);
    let out = hdx(&["verify-all", "rp2.cplx", "--k", "1", "--samples", "20", "-o", "r.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&dir.path().join("r.json"));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["complex"]["dim"], 2);
    let balance = checks_named(&r, "cohomology_balance");
    assert!(!balance.is_empty());
    assert!(balance.iter().all(|c| c["verdict"] == "verified"));
    assert_eq!(r["measurements"]["cohomology_dim[k=1]"], "1");
}

#[test]
fn missing_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let out = hdx(&["analyze", "nope.cplx"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = hdx(&["balance", "--no-such-flag"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_range_parameters_are_rejected() {
    let dir = TempDir::new().unwrap();
    rp2(&dir);
    for bad in [["--k", "2"], ["--epsilon", "3/2"], ["--lambda", "1.5"]] {
        let mut args = vec!["expansion", "rp2.cplx"];
        args.extend(bad);
        assert_eq!(hdx(&args, dir.path()).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn balance_of_a_minimal_cochain_reports_exact_constants() {
    let dir = TempDir::new().unwrap();
    rp2(&dir);
    let x = rp2_six();
    let classes = cohomology_classes(&x, 1, DEFAULT_BUDGET).unwrap();
    let f = classes.iter().find(|c| !c.is_trivial()).unwrap().minimal_elements[0].clone();
    std::fs::write(dir.path().join("f.cochain"), write_cochain(&x, &f)).unwrap();
    let out = hdx(&["balance", "rp2.cplx", "--cochain", "f.cochain", "--ell", "0", "-o", "b.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&dir.path().join("b.json"));
    let alpha = r["measurements"]["alpha_0"].as_str().unwrap();
    assert!(alpha.chars().all(|c| c.is_ascii_digit() || c == '/'), "{alpha}");
    assert_eq!(r["config"]["ell"], 0);
}

#[test]
fn csv_output_has_one_row_per_check() {
    let dir = TempDir::new().unwrap();
    rp2(&dir);
    let out = hdx(&["spectra", "rp2.cplx", "--format", "csv", "-o", "s.csv"], dir.path());
    assert!(out.status.code().is_some_and(|c| c <= 1));
    let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["name", "anchor", "verdict", "lhs", "rhs", "margin", "witness", "detail"]
    );
    assert!(reader.records().count() > 0);
}

#[test]
fn tiny_budget_is_infeasible_under_strict() {
    let dir = TempDir::new().unwrap();
    rp2(&dir);
    let out = Command::new(env!("CARGO_BIN_EXE_hdx"))
        .args(["expansion", "rp2.cplx", "--k", "1", "--strict", "-o", "e.json"])
        .current_dir(dir.path())
        .env("HDX_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&dir.path().join("e.json"));
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["verdict"] == "infeasible"));
}

#[test]
fn random_generation_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let args = ["generate", "--kind", "linial_meshulam", "--n", "9", "--d", "2", "--p", "0.4", "--seed", "11"];
    let a = hdx(&args, dir.path());
    let b = hdx(&args, dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("dim 2\n"));
}
