use std::process::{Command, Output};

fn cpb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn overlap_json_fields() {
    let o = cpb(&["overlap", "--n", "4", "--n1", "2", "--delta-n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"].as_f64().unwrap(), 0.5625);
    assert!((v["asymptotic"].as_f64().unwrap() - (-0.25f64).exp()).abs() < 1e-15);
    let log_exact = 4.0 * (3.0f64.sqrt() / 2.0).ln();
    assert!((v["log_exact"].as_f64().unwrap() - log_exact).abs() < 1e-15);
}

#[test]
fn degenerate_effective_spectrum_csv() {
    let o = cpb(&["effective-spectrum", "--ec", "1", "--ej", "0", "--ng", "0.5", "--levels", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "level,energy\n0,0.25\n1,0.25\n");
}

#[test]
fn missing_flag_is_a_usage_error() {
    let o = cpb(&["overlap", "--n", "4", "--n1", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = stderr(&o);
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.contains("--delta-n"));
}

#[test]
fn unknown_flag_is_rejected() {
    let o = cpb(&["overlap", "--n", "4", "--n1", "2", "--delta-n", "1", "--nope", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_values_exit_two() {
    for args in [
        &["effective-spectrum", "--ec", "-1", "--ej", "0", "--ng", "0"][..],
        &["overlap", "--n", "4", "--n1", "1", "--delta-n", "3"],
        &["cone-scan", "--n", "10", "--n1", "5", "--delta-n", "1", "--thresholds", "1.5"],
        &["compare", "--ec", "1", "--u", "0", "--lambda", "0.1", "--n", "10", "--nbar1", "11"],
        &["compare", "--ec", "1", "--u", "0", "--lambda", "0.1", "--n", "2", "--nbar1", "1", "--levels", "3"],
    ] {
        let o = cpb(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty());
        assert_eq!(stderr(&o).trim_end().lines().count(), 1);
    }
}

#[test]
fn truncation_failure_exits_three() {
    // AUTO cutoff cannot converge below its limit.
    let o = cpb(&["effective-spectrum", "--ec", "1", "--ej", "1e12", "--ng", "0", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn unwritable_output_exits_four() {
    let o = cpb(&["overlap", "--n", "4", "--n1", "2", "--delta-n", "2", "--output", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("cpb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let args = ["sweep-ng", "--ec", "1", "--ej", "0.5", "--ng-start", "-1", "--ng-stop", "1", "--ng-steps", "9", "--levels", "3"];
    let direct = cpb(&args);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let o = cpb(&with_file);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_schema_and_grid() {
    let o = cpb(&["sweep-ng", "--ec", "1", "--ej", "0", "--ng-start", "0", "--ng-stop", "1", "--ng-steps", "5", "--levels", "3"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("ng,e0,e1,e2"));
    let ngs: Vec<f64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ngs, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
}

#[test]
fn cone_scan_schema_and_crossings() {
    let o = cpb(&[
        "cone-scan", "--n", "100000000", "--n1", "10000", "--delta-n", "0,100,200,300", "--thresholds", "0.9,0.001",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("delta_n,overlap_exact,overlap_asymptotic\n"));
    assert!(text.contains("# threshold=0.9 first_delta_n_below=100.0\n"));
    assert!(text.contains("# threshold=0.001 first_delta_n_below=none\n"));

    let o = cpb(&[
        "cone-scan", "--n", "100000000", "--n1", "10000", "--delta-start", "0", "--delta-stop", "300",
        "--delta-steps", "4", "--thresholds", "0.9", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["crossings"][0]["delta_n"].as_f64(), Some(100.0));
}

#[test]
fn compare_schema() {
    let o = cpb(&["compare", "--ec", "1", "--u", "0", "--lambda", "0", "--n", "20", "--nbar1", "10", "--levels", "4"]);
    assert_eq!(
        stdout(&o),
        "level,gap_two_mode,gap_effective,rel_discrepancy\n1,1.0,1.0,0.0\n2,1.0,1.0,0.0\n3,4.0,4.0,0.0\n4,4.0,4.0,0.0\n"
    );
}

#[test]
fn two_mode_background_warning() {
    let o = cpb(&["two-mode-spectrum", "--ec", "1", "--u", "0", "--lambda", "0.1", "--n", "10", "--nbar1", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).starts_with("warning:"));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn pipeline_reports_both_overlaps() {
    // E_J = 0 at the sweet spot: charge states 0 and 1.
    let o = cpb(&[
        "pipeline", "--ec", "1", "--u", "-1", "--lambda", "0", "--n", "100000", "--nbar1", "10000", "--n1", "10000",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["delta_n"].as_f64(), Some(1.0));
    assert!(v["effective_overlap"].as_f64().unwrap() <= 1e-10);
    let asym = v["condensate_overlap_asymptotic"].as_f64().unwrap();
    assert!((asym - (-1.0f64 / 80_000.0).exp()).abs() < 1e-15);
    assert_eq!(v["gap_table"].as_array().unwrap().len(), 3);

    let o = cpb(&["pipeline", "--ec", "1", "--u", "-1", "--lambda", "0", "--n", "100000", "--nbar1", "10000", "--n1", "10000"]);
    let text = stdout(&o);
    assert!(text.starts_with("key,value\ne_j,"));
    assert!(text.contains("\ndelta_n,1.0\n"));
}

#[test]
fn negative_values_parse_without_equals() {
    let o = cpb(&["two-mode-spectrum", "--ec", "1", "--u", "-0.5", "--lambda", "-0.2", "--n", "4", "--nbar1", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = cpb(&["effective-spectrum", "--ec", "1", "--ej", "-1e-3", "--ng", "-2.5e-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}
