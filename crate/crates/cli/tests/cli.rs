use std::process::{Command, Output};

fn refent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_refent")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn bell_r_sweep_has_one_row_per_point_and_pair() {
    let o = refent(&["sweep", "--state", "bell", "--pairs", "AB,ABbar,BBbar", "--var", "r", "--range", "0:0.785398:100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "family,alpha,variable,value,pair,S_R,I,h,bound_lo,bound_hi");
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 300);
    for row in &rows {
        let f = |i: usize| row[i].parse::<f64>().unwrap();
        let (s_r, i, h, lo, hi) = (f(5), f(6), f(7), f(8), f(9));
        assert!(hi + 1e-9 >= s_r && s_r + 1e-9 >= lo, "{row:?}");
        assert!((h - (s_r - i)).abs() < 1e-10, "{row:?}");
    }
    assert!(!text.contains('\r'));
}

#[test]
fn sweep_output_is_deterministic() {
    let args = ["sweep", "--state", "werner", "--var", "r", "--range", "0:pi/4:7"];
    assert_eq!(refent(&args).stdout, refent(&args).stdout);
}

#[test]
fn ghz_alpha_sweep_to_file_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ghz.json");
    let o = refent(&[
        "sweep", "--state", "ghz", "--var", "alpha", "--r", "0.785398", "--range", "0:1:5", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 5 * 3);
    for key in ["family", "alpha", "variable", "value", "pair", "S_R", "I", "h", "bound_lo", "bound_hi"] {
        assert!(rows[0].get(key).is_some(), "missing {key}");
    }
    assert_eq!(rows[0]["variable"], "alpha");
}

#[test]
fn temperature_sweep_needs_omega() {
    assert_eq!(refent(&["sweep", "--state", "bell", "--var", "T", "--range", "1:10:5"]).status.code(), Some(2));
    let o = refent(&["sweep", "--state", "bell", "--var", "T", "--omega", "1", "--range", "1:10:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 5 * 3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["sweep", "--state", "bell", "--range", "0:0:2"][..],
        &["sweep", "--state", "bell", "--range", "0:2:5"],
        &["sweep", "--state", "dicke"],
        &["sweep", "--state", "bell", "--pairs", "AZ"],
        &["sweep", "--state", "ghz", "--var", "alpha", "--range", "0:1:5"],
        &["counterexample", "--n", "1", "--m", "2", "--a", "1", "--b", "1"],
        &["counterexample", "--n", "3", "--m", "2", "--a", "1", "--b", "1", "--reading", "other"],
        &["sigma", "--state", "werner", "--omega", "-1", "--t", "1:10:10"],
        &["verify", "--scope", "everything"],
        &["frobnicate"],
    ] {
        assert_eq!(refent(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn counterexample_reports_negative_minimum() {
    let o = refent(&["counterexample", "--n", "3", "--m", "2", "--a", "1.5", "--b", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "xi,gap");
    let gaps: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(gaps.len(), 200);
    assert!(gaps.iter().cloned().fold(f64::INFINITY, f64::min) < 0.0);
    assert!(stderr(&o).contains("negative"));
}

#[test]
fn counterexample_at_threshold_is_nonnegative() {
    let o = refent(&["counterexample", "--n", "2", "--m", "2", "--a", "1", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("nonnegative"));
}

#[test]
fn symmetrized_reading_fails_with_report() {
    let o = refent(&["counterexample", "--n", "3", "--m", "2", "--a", "1.5", "--b", "0.5", "--reading", "symmetrized"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("positive semidefinite"));
    assert!(err.contains("diagonal: minimum gap"));
}

#[test]
fn sigma_rows_and_columns() {
    let o = refent(&["sigma", "--state", "bell", "--omega", "10,20", "--t", "1:100:4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "family,omega,T,sigma,omega_sigma");
    assert_eq!(text.lines().count(), 1 + 2 * 4);
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (omega, sigma, os): (f64, f64, f64) = (f[1].parse().unwrap(), f[3].parse().unwrap(), f[4].parse().unwrap());
        assert!((omega * sigma - os).abs() <= 1e-10 * os.abs().max(1.0));
    }
}

#[test]
fn verify_passes_on_a_clean_build() {
    let o = refent(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_catches_injected_faults() {
    for fault in ["natural-log", "swap-bogoliubov"] {
        let o = refent(&["verify", "--inject", fault]);
        assert_eq!(o.status.code(), Some(1), "{fault}");
        assert!(stdout(&o).contains("FAIL"), "{fault}");
    }
}

#[test]
fn verify_scope_limits_checks() {
    let all = stdout(&refent(&["verify"])).lines().count();
    let values = stdout(&refent(&["verify", "--scope", "values"])).lines().count();
    assert!(values < all);
}
