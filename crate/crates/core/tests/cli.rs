use std::path::PathBuf;
use std::process::{Command, Output};

use realrad::pipeline::CertificateReport;

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("inputs").join(name)
}

fn realrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realrad")).args(args).env("REALRAD_LOG", "quiet").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn json_report(args: &[&str]) -> (CertificateReport, String, Option<i32>) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = realrad(&all);
    let text = stdout(&out);
    (serde_json::from_str(&text).expect("valid report JSON"), text, out.status.code())
}

fn rank_plus_corank(r: &CertificateReport) {
    let n = r.order.len() as u64;
    for rec in &r.records {
        for l in 0..3 {
            let expect = binomial(n + rec.t as u64 - l as u64, n);
            assert_eq!((rec.rank[l] + rec.corank[l]) as u64, expect, "t={} ℓ={l}", rec.t);
        }
    }
}

#[test]
fn stetter_table() {
    let out = realrad(&[input("stetter.txt").to_str().unwrap(), "--tol", "1e-5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("t=4: 16 11 7 / 19 9 3 / α: 1 1 1 → 6"), "{text}");
    assert!(text.contains("status: CERTIFIED at t=4"), "{text}");
}

#[test]
fn line_point_json_round_trip() {
    let path = input("line_point.txt");
    let (report, text, code) = json_report(&[path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert_eq!(report.certified_t, Some(3));
    assert_eq!(report.strong_basis, vec!["x".to_string()]);
    assert!(report.rationalized);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, text);
    let back: CertificateReport = serde_json::from_str(&again).unwrap();
    assert_eq!(back, report);
    rank_plus_corank(&report);
}

#[test]
fn reruns_are_byte_identical() {
    let path = input("sphere_paraboloid.txt");
    let a = realrad(&[path.to_str().unwrap(), "--format", "both"]);
    let b = realrad(&[path.to_str().unwrap(), "--format", "both"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sphere_paraboloid_exact_basis() {
    let path = input("sphere_paraboloid.txt");
    let (report, _, code) = json_report(&[path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert_eq!(report.certified_t, Some(4));
    assert!(report.rationalized);
    assert_eq!(report.strong_basis.len(), 2);
    rank_plus_corank(&report);
}

#[test]
fn coordinate_change_certifies_irregular_system() {
    let sys = input("irregular.txt");
    let (before, _, code) = json_report(&[sys.to_str().unwrap(), "--tmax", "5"]);
    assert_eq!(code, Some(2));
    assert_eq!(before.certified_t, None);
    assert!(before.diagnostic.is_some());

    let change = input("irregular_change.txt");
    let (after, _, code) = json_report(&[sys.to_str().unwrap(), "--coord-change", change.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert_eq!(after.certified_t, Some(4));
    let a = after.coordinate_change.as_ref().expect("matrix recorded");
    assert_eq!(a[0], vec!["0", "0", "1"]);
    rank_plus_corank(&after);
}

#[test]
fn infeasible_system_exits_3() {
    let dir = std::env::temp_dir().join(format!("realrad_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.txt");
    std::fs::write(&path, "vars: x\ngen: x^2 + 1\n").unwrap();
    let out = realrad(&[path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("INFEASIBLE"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(realrad(&[]).status.code(), Some(1));
    assert_eq!(realrad(&["/no/such/file.txt"]).status.code(), Some(1));
    let path = input("line_point.txt");
    assert_eq!(realrad(&[path.to_str().unwrap(), "--ball", "-3"]).status.code(), Some(1));
    assert_eq!(realrad(&["--help"]).status.code(), Some(0));
}

#[test]
fn order_flag_is_validated() {
    let path = input("line_point.txt");
    let out = realrad(&[path.to_str().unwrap(), "--order", "y > x"]);
    assert_eq!(out.status.code(), Some(1), "unknown variable y must be rejected");
}
