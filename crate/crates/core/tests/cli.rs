use std::path::Path;
use std::process::{Command, Output};

use qcgirth::alist::{export_alist, import_alist};
use qcgirth::{BlockMatrix, CirculantSpec};

fn qcgirth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcgirth")).args(args).env_remove("QCGIRTH_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn single_circulant(dir: &Path) -> std::path::PathBuf {
    let bm = BlockMatrix::from_grid(vec![vec![CirculantSpec::weight_two(6, 0, 3).unwrap()]]).unwrap();
    let p = dir.join("c6.json");
    std::fs::write(&p, bm.to_json().unwrap()).unwrap();
    p
}

#[test]
fn girth_of_half_separation_circulant() {
    let dir = tempfile::tempdir().unwrap();
    let json = single_circulant(dir.path());
    let o = qcgirth(&["girth", path(&json)]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "4"));

    let alist = dir.path().join("c6.alist");
    let o = qcgirth(&["export", path(&json), "-o", path(&alist)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&alist).unwrap();
    assert!(text.starts_with("6 6\n2 2\n2 2 2 2 2 2\n"));
    let o = qcgirth(&["girth", path(&alist)]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = qcgirth(&["import", path(&alist)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["n_cols"].as_u64(), v["ones"].as_u64()), (Some(6), Some(12)));
}

#[test]
fn verify_failure_exits_one_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = single_circulant(dir.path());
    let o = qcgirth(&["verify", path(&json), "--target-girth", "6"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["report"]["violations"][0]["condition_id"], "4.1");
}

#[test]
fn bresnan_count_only() {
    let o = qcgirth(&["search", "bresnan", "--m", "11", "--alpha", "4", "--count-only"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "0"));
    let o = qcgirth(&["search", "bresnan", "--m", "13", "--alpha", "4", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "6169176");
}

#[test]
fn search_summary_and_jobs_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_qcgirth"))
        .args(["search", "bresnan", "--m", "14", "--alpha", "4", "--samples", "3"])
        .env("QCGIRTH_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["m"].as_u64(), v["alpha"].as_u64(), v["family"].as_str()), (Some(14), Some(4), Some("bresnan")));
    assert_eq!(v["solutions"].as_array().unwrap().len(), 3);
    assert!(v["elapsed"].as_f64().is_some());
    assert!(String::from_utf8_lossy(&o.stderr).contains("sample 3 found"));
}

#[test]
fn reg36_construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = qcgirth(&["construct", "reg36", "--m", "23", "--alpha", "39", "--seed", "5", "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = qcgirth(&["verify", path(&out), "--target-girth", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qcgirth(&["girth", path(&out)]);
    assert!(stdout(&o).trim().parse::<usize>().unwrap() >= 10);
}

#[test]
fn usage_and_io_exit_codes() {
    assert_eq!(qcgirth(&["girth", "--bogus"]).status.code(), Some(2));
    assert_eq!(qcgirth(&["catalog", "--s", "5"]).status.code(), Some(2));
    assert_eq!(qcgirth(&["search", "reg24", "--m", "11", "--alpha", "6", "--count-only"]).status.code(), Some(2));
    assert_eq!(qcgirth(&["girth", "/nonexistent/file.json"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alist");
    std::fs::write(&bad, "3 3\n1 1\n").unwrap();
    assert_eq!(qcgirth(&["girth", path(&bad)]).status.code(), Some(3));
}

#[test]
fn catalog_dump_sizes() {
    for (s, n) in [(2, 3), (3, 7), (4, 27)] {
        let o = qcgirth(&["catalog", "--s", &s.to_string()]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["entries"].as_array().unwrap().len(), n);
    }
}

#[test]
fn simulate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("b.json");
    let o = qcgirth(&["construct", "bresnan", "--m", "13", "--alpha", "4", "-o", path(&code)]);
    assert_eq!(o.status.code(), Some(0));
    let run = || qcgirth(&["simulate", path(&code), "--snr", "1:2:0.5", "--seed", "9", "--jobs", "2"]);
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "snr_db,trials,block_errors,fer,fer_plus,fer_minus");
    assert_eq!(lines.len(), 4);
    assert_eq!(text, stdout(&b));
}

#[test]
fn alist_file_round_trip_matches_expansion() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("b.json");
    qcgirth(&["construct", "bresnan", "--m", "13", "--alpha", "4", "-o", path(&code)]);
    let alist = dir.path().join("b.alist");
    qcgirth(&["export", path(&code), "-o", path(&alist)]);
    let bm = BlockMatrix::from_json(&std::fs::read_to_string(&code).unwrap()).unwrap();
    let text = std::fs::read_to_string(&alist).unwrap();
    assert_eq!(import_alist(&text).unwrap(), bm.expand());
    assert_eq!(export_alist(&bm.expand()), text);
}
