use std::process::{Command, Output};

use zeta_forge::bounds::{BoundReport, Status};
use zeta_forge::cli::reports_csv;

fn bin(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zeta-forge"));
    cmd.args(args).env_remove("ZETA_FORGE_THREADS");
    if let Some(t) = threads {
        cmd.env("ZETA_FORGE_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_has_header_and_rows() {
    let o = bin(&["table"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("section,label,rho,b_rho,n_min,expected_n"));
    assert!(lines.count() >= 12 + 11);
}

#[test]
fn verify_is_deterministic_across_threads() {
    let args = ["verify", "--suite", "main", "--trials", "12", "--seed", "5"];
    let a = bin(&args, Some("1"));
    let b = bin(&args, Some("3"));
    let c = bin(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let other = bin(&["verify", "--suite", "main", "--trials", "12", "--seed", "6"], None);
    assert_ne!(a.stdout, other.stdout);
    assert!(stdout(&a).starts_with("bound_name,n,rho_summary,lhs,rhs,margin,status\n"));
}

#[test]
fn verify_writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("zeta-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("charfn.csv");
    let o = bin(&["verify", "--suite", "charfn", "--trials", "5", "--out", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass") || l.ends_with(",equality")));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn zeta_values_and_exit_codes() {
    let o = bin(&["zeta", "--law-a", "rademacher", "--law-b", "normal", "--s", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: f64 = text.trim().strip_prefix("zeta_4 = ").unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!((v - 1.0 / 12.0).abs() < 1e-8);

    let o = bin(&["zeta", "--law-a", "rademacher", "--law-b", "normal"], None);
    let v: f64 = stdout(&o).trim().strip_prefix("zeta_3 = ").unwrap().split(' ').next().unwrap().parse().unwrap();
    let closed = (4.0 / (2.0 * std::f64::consts::PI).sqrt() - 1.0) / 6.0;
    assert!((v - closed).abs() < 1e-8);

    let o = bin(&["zeta", "--law-a", "bernoulli:0.3", "--law-b", "rademacher"], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).trim(), "zeta_3 = infinite (moment 1)");

    let o = bin(&["zeta", "--law-a", "tworho:2", "--law-b", "binomial:1"], None);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn zeta_reads_law_files() {
    let dir = std::env::temp_dir().join(format!("zeta-forge-law-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("law.json");
    std::fs::write(&path, r#"{"atoms":[-1.0,1.0],"masses":[0.5,0.5]}"#).unwrap();
    let o = bin(&["zeta", "--law-a", path.to_str().unwrap(), "--law-b", "rademacher"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "zeta_3 = 0 +/- 0");
    std::fs::write(&path, r#"{"atoms":[0.0],"masses":[2.0]}"#).unwrap();
    let o = bin(&["zeta", "--law-a", path.to_str().unwrap(), "--law-b", "rademacher"], None);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--trials", "0"],
        vec!["verify", "--tol", "-1"],
        vec!["zeta", "--law-a", "binomial:x", "--law-b", "normal"],
        vec!["zeta", "--law-a", "/no/such/file.json", "--law-b", "normal"],
        vec!["zeta", "--law-a", "rademacher", "--law-b", "normal", "--s", "7"],
    ] {
        assert_eq!(bin(&args, None).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(bin(&["table"], Some("zero")).status.code(), Some(2));
    assert_eq!(bin(&["table"], Some("0")).status.code(), Some(2));
}

#[test]
fn failing_report_is_detected() {
    let bad = BoundReport::new("main", vec![1.0], vec![1.5], 0.3, 0.2, 1e-9);
    assert_eq!(bad.status(), Status::Fail);
    assert!(reports_csv(&[bad]).lines().nth(1).unwrap().ends_with(",fail"));
}
