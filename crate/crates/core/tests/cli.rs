use std::process::{Command, Output};

fn fermicorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermicorr")).args(args).output().expect("binary runs")
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .skip(2)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_limits() {
    let out = fermicorr(&["spectrum", "--r", "0:6:0.05"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.starts_with("# meta: "));
    assert!(!text.contains('\r'));
    let rows = rows(&out);
    assert_eq!(rows.len(), 121);
    for row in &rows {
        for cell in &row[3..=5] {
            assert_eq!(cell, "0.0");
        }
    }
}

#[test]
fn sweep_is_byte_identical_across_runs_and_jobs() {
    let args = ["sweep", "--T", "0.1", "--r", "1.5:1.8:0.1", "--seed", "11"];
    let a = fermicorr(&[&args[..], &["--jobs", "3"]].concat());
    let b = fermicorr(&args);
    let c = Command::new(env!("CARGO_BIN_EXE_fermicorr")).args(args).env("FERMICORR_JOBS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(fermicorr(&["sweep", "--r", "2:1:0.1"]).status.code(), Some(1));
    assert_eq!(fermicorr(&["critical", "--picture", "nope"]).status.code(), Some(1));
    assert_eq!(fermicorr(&["bounds", "--T", "0.1", "--r", "0.5,2"]).status.code(), Some(0));
    let v = fermicorr(&["bounds", "--T", "0.5", "--r", "4.5:5:0.5", "--ensemble", "canonical"]);
    assert_eq!(v.status.code(), Some(3));
    assert!(rows(&v).iter().any(|r| r[7] == "false"));
    // T = 1 may lie above the last temperature with any entanglement
    let out = fermicorr(&["critical", "--T", "1", "--method", "exact"]);
    let code = out.status.code().unwrap();
    assert!(code == 0 || code == 2);
}

#[test]
fn critical_curves_decrease() {
    for picture in ["mode", "particle"] {
        let out = fermicorr(&["critical", "--picture", picture, "--T", "log:1e-3:0.3:12"]);
        assert_eq!(out.status.code(), Some(0));
        let rows = rows(&out);
        let exact: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
        assert!(exact.windows(2).all(|w| w[0] > w[1]));
        let gap = |r: &Vec<String>| (r[1].parse::<f64>().unwrap() - r[3].parse::<f64>().unwrap()).abs();
        assert!(gap(&rows[0]) < gap(&rows[11]));
    }
}
