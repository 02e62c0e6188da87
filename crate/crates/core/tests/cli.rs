mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const SURFACE: &str = "gens a b c d\nrel [a,b][c,d]\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cc-growth")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn workspace() -> (TempDir, String, String) {
    let dir = TempDir::new().unwrap();
    let h = dir.path().join("heisenberg.txt");
    fs::write(&h, common::HEISENBERG).unwrap();
    let s = dir.path().join("surface.txt");
    fs::write(&s, SURFACE).unwrap();
    let h = h.to_str().unwrap().to_owned();
    let s = s.to_str().unwrap().to_owned();
    (dir, h, s)
}

fn no_temp_leftovers(dir: &Path, expected: usize) {
    let names: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), expected, "{names:?}");
}

#[test]
fn usage_and_version() {
    assert_eq!(code(&run(&[])), 64);
    assert_eq!(code(&run(&["growth", "--k", "0"])), 64);
    let v = run(&["--version"]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).contains("presentation grammar 1"));
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn unreadable_and_malformed_inputs() {
    let (dir, _, _) = workspace();
    let missing = dir.path().join("nope.txt");
    assert_eq!(code(&run(&["parse", "--presentation", missing.to_str().unwrap()])), 66);
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "gens a\nrel a (").unwrap();
    let o = run(&["parse", "--presentation", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn parse_round_trips_through_stdout() {
    let (dir, h, _) = workspace();
    let o = run(&["parse", "--presentation", &h]);
    assert_eq!(code(&o), 0);
    let again = dir.path().join("again.txt");
    fs::write(&again, stdout(&o)).unwrap();
    let o2 = run(&["parse", "--presentation", again.to_str().unwrap()]);
    assert_eq!(stdout(&o), stdout(&o2));
}

#[test]
fn sc_check_verdicts() {
    let (_dir, h, s) = workspace();
    let pass = run(&["sc-check", "--presentation", &s]);
    assert_eq!(code(&pass), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&pass)).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(code(&run(&["sc-check", "--presentation", &h])), 1);
    assert_eq!(code(&run(&["sc-check", "--presentation", &h, "--k", "16"])), 0);
    assert_eq!(code(&run(&["sc-check", "--presentation", &h, "--k", "10"])), 1);
    assert_eq!(code(&run(&["sc-check", "--presentation", &h, "--lambda", "7/6"])), 64);
}

#[test]
fn dehn_exit_codes() {
    let (_dir, h, s) = workspace();
    assert_eq!(code(&run(&["dehn", "--presentation", &s, "--word", "[a,b][c,d]"])), 0);
    let o = run(&["dehn", "--presentation", &s, "--word", "a"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("dehn: non-trivial"));
    // not C'(1/6): a reduction to the empty word is still a proof
    assert_eq!(code(&run(&["dehn", "--presentation", &h, "--word", "[a,[a,b]]"])), 0);
    assert_eq!(code(&run(&["dehn", "--presentation", &h, "--word", "a"])), 2);
}

#[test]
fn rips_gen_writes_both_artifacts() {
    let (dir, h, _) = workspace();
    let out_dir = dir.path().join("out");
    fs::create_dir(&out_dir).unwrap();
    let out = out_dir.join("g.txt");
    let o = run(&["rips-gen", "--presentation", &h, "--k", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    no_temp_leftovers(&out_dir, 2);
    let sidecar: serde_json::Value = serde_json::from_str(&fs::read_to_string(out_dir.join("g.txt.json")).unwrap()).unwrap();
    let lengths: Vec<u64> = sidecar["rules"].as_array().unwrap().iter().map(|r| r["rhs_length"].as_u64().unwrap()).collect();
    assert_eq!(lengths.len(), 8);
    assert_eq!(*lengths.iter().min().unwrap(), 155);
    assert_eq!(*lengths.iter().max().unwrap(), 855);
    let g = fs::read_to_string(&out).unwrap();
    assert_eq!(code(&run(&["parse", "--presentation", out.to_str().unwrap()])), 0);
    assert!(g.starts_with("gens a b x y"));
}

#[test]
fn heisenberg_csv() {
    let (dir, _, _) = workspace();
    let csv = dir.path().join("h.csv");
    let o = run(&["heisenberg", "--n-max", "16", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,z_power_length,four_sqrt_bound"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0][0], "1");
    assert_eq!(rows[0][1], "4");
    assert_eq!(rows[3][1], "8");
    for r in &rows {
        let n: f64 = r[0].parse().unwrap();
        let bound: f64 = r[2].parse().unwrap();
        assert!((bound - 4.0 * n.sqrt()).abs() < 1e-9);
    }
    assert_eq!(code(&run(&["heisenberg", "--n-max", "16", "--radius", "500", "--csv", csv.to_str().unwrap()])), 64);
}

#[test]
fn growth_modes_and_resource_exit() {
    let (dir, h, _) = workspace();
    let csv = dir.path().join("g.csv");
    let args = |mode: &'static str| {
        vec!["growth", "--presentation", h.as_str(), "--k", "10", "--q", "[a,b]", "--class", "x", "--n-max", "3", "--mode", mode, "--csv", csv.to_str().unwrap()]
    };
    assert_eq!(code(&run(&args("counts"))), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("n,q_length,ln_upper,oracle_exact\n"));
    fs::remove_file(&csv).unwrap();
    let o = run(&args("materialize"));
    assert_eq!(code(&o), 3);
    assert!(!csv.exists());
    assert!(String::from_utf8_lossy(&o.stderr).contains("--mode counts"));
}

#[test]
fn lenfun_and_lip() {
    let (_dir, h, _) = workspace();
    assert_eq!(code(&run(&["lenfun", "--alpha", "1/2", "--lambda", "4", "--rmax", "12", "--samples", "200"])), 0);
    assert_eq!(code(&run(&["lenfun", "--alpha", "1/3", "--lambda", "4", "--rmax", "12", "--samples", "200"])), 1);
    let o = run(&["lip", "--presentation", &h, "--k", "10", "--q", "a", "--radius", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["lower"].as_f64().unwrap() <= v["upper"].as_f64().unwrap());
}

#[test]
fn unwritable_output() {
    let (dir, _, _) = workspace();
    let csv = dir.path().join("missing-dir").join("h.csv");
    assert_eq!(code(&run(&["heisenberg", "--n-max", "4", "--csv", csv.to_str().unwrap()])), 73);
}

#[test]
fn same_seed_same_bytes() {
    let a = run(&["--seed", "9", "lenfun", "--alpha", "1/2", "--lambda", "4", "--rmax", "8", "--samples", "300"]);
    let b = run(&["--seed", "9", "lenfun", "--alpha", "1/2", "--lambda", "4", "--rmax", "8", "--samples", "300"]);
    assert_eq!(a.stdout, b.stdout);
}
