use std::process::Command;

fn affmac(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_affmac")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_exits_zero_on_agreement() {
    let (code, out, _) = affmac(&["verify", "--type", "A1^(1)", "--weight", "2", "--trunc", "12"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["reciprocity"]["all_equal"], true);
}

#[test]
fn usage_errors_exit_two_with_a_message() {
    let (code, out, err) = affmac(&["macdonald", "--type", "A2^(1", "--weight", "1,0"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("position"), "{err}");
    let (code, _, err) = affmac(&["macdonald", "--type", "A2^(1)", "--weight", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("expected 2"), "{err}");
    let (code, _, _) = affmac(&["macdonald"]);
    assert_eq!(code, 2);
}

#[test]
fn twisted_macdonald_reports_both_norms() {
    let (code, out, _) = affmac(&["macdonald", "--type", "A2^(2)", "--weight", "1", "--verify-truncation"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["truncation_stable"], true);
    let rows = v["basis"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["norm_gs"] == r["norm_cf"]));
}

#[test]
fn half_integral_shift_in_twisted_type() {
    let (code, out, _) = affmac(&["bgg", "--type", "A2^(2)", "--weight", "1", "--shift", "1/2", "--trunc", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["shift_u"], 1);
    let (code, _, _) = affmac(&["bgg", "--type", "A2^(1)", "--weight", "1,0", "--shift", "1/2"]);
    assert_eq!(code, 2);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["bgg-table", "--type", "C2^(1)", "--weight", "0,1", "--trunc", "5", "--format", "csv"];
    let a = affmac(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, affmac(&args));
    assert!(a.1.lines().skip(1).all(|l| l.ends_with(",weyl_filtration") || l.ends_with(",jordan_holder")));
}
