use std::process::{Command, Output};

fn charcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charcorr")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = charcorr(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows of a CSV, comments and header dropped.
fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn gen_f4_m_sequence() {
    let out = stdout(&["gen", "--field", "p=2; modulus=1,1,1"]);
    assert_eq!(out, "re,im\n1,0\n-1,0\n-1,0\n");
}

#[test]
fn gen_legendre_sequence() {
    let out = stdout(&["gen", "--char", "mult:p=7,j=3", "--unimodular"]);
    let re: Vec<f64> = rows(&out).iter().map(|r| r[0]).collect();
    assert_eq!(re, [1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0]);
}

#[test]
fn corr_profile_of_short_sequence() {
    let out = stdout(&["corr", "--field", "p=2; modulus=1,1,1"]);
    assert!(out.starts_with("s,re,im,abs2\n"));
    let r = rows(&out);
    assert_eq!(r.len(), 5);
    assert_eq!(r[2], [0.0, 3.0, 0.0, 9.0]);
    assert_eq!(r[4], [2.0, -1.0, 0.0, 1.0]);
}

#[test]
fn metrics_of_legendre_pair() {
    let out = stdout(&["metrics", "--char", "mult:p=7,j=3", "--unimodular"]);
    let r = &rows(&out)[0];
    assert!((r[0] - 2.0 / 7.0).abs() < 1e-11);
    assert!((r[2] - r[0] - 1.0).abs() < 1e-11);
    assert!(r[4] <= r[2] && r[2] <= r[5] + 1e-9);
}

#[test]
fn scan_has_one_row_per_shift() {
    let out = stdout(&["scan", "--field", "p=2; modulus=1,0,0,1,1", "--d", "-1"]);
    assert_eq!(rows(&out).len(), 15);
    let out = stdout(&["scan", "--char", "mult:p=11,j=5", "--shift", "5", "--unimodular"]);
    assert_eq!(rows(&out).len(), 11);
}

#[test]
fn asymptote_values() {
    let v = |args: &[&str]| stdout(args).trim().parse::<f64>().unwrap();
    let rev = v(&["asymptote", "--family", "additive", "--subcase", "reversing", "--lambda", "1", "--sigma", "0.5"]);
    assert!((rev - 5.0 / 6.0).abs() < 1e-11);
    let quad = v(&[
        "asymptote", "--family", "multiplicative", "--subcase", "quadratic", "--lambda", "0.5", "--delta", "0.5",
        "--sigma", "0", "--p", "257",
    ]);
    assert!((quad - 1.0 / 3.0).abs() < 1e-11);
}

#[test]
fn optimize_reports_the_quadratic_record() {
    let out = stdout(&["optimize", "--case", "quadratic"]);
    assert!(out.contains("min_value,0.299216175"));
    assert!(out.contains("lambda,0.557874698"));
}

#[test]
fn validation_errors_exit_with_two() {
    for args in [
        &["reproduce", "nosuch"][..],
        &["asymptote", "--family", "additive", "--subcase", "reversing", "--lambda", "1"],
        &["gen", "--field", "p=2; modulus=1,0,1"],
        &["gen", "--char", "mult:p=8,j=1"],
        &["gen", "--char", "banana"],
        &["gen", "--unknown-flag"],
        &["reproduce", "lester", "--d", "7"],
    ] {
        let out = charcorr(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reproduce_writes_identical_files_for_any_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (threads, path) in [("1", &a), ("4", &b)] {
        let out = charcorr(&["reproduce", "monica", "--reduced", "--threads", threads, "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("fractional_shift_sum,df_measured,df_asymptotic,cdf_measured,cdf_asymptotic"));
    assert_eq!(rows(&text).len(), 127);
}

#[test]
fn reproduce_top_panel() {
    let out = stdout(&["reproduce", "lester", "--reduced", "--d", "top"]);
    assert!(out.contains("# decimation 7 (Other)"));
    let r = rows(&out);
    assert_eq!(r.len(), 255);
    assert!(r.iter().all(|row| row[2] == 1.0));
}
