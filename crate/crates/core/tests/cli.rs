use std::process::Command;

use flipcheck::report::Report;

fn flipcheck(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_flipcheck")).args(args).output().expect("spawn");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn ext_on_e_is_one_dimensional() {
    let (out, _, code) = flipcheck(&["ext", "--N", "5", "--space", "e", "S{1}Uv(1H-1h)", "S{2}Uv"]);
    assert_eq!(out, "Ext^0 = 1\n");
    assert_eq!(code, 0);
}

#[test]
fn cohom_in_vanishing_band() {
    let (out, _, code) = flipcheck(&["cohom", "--N", "4", "Sigma{-2,-2}Uv"]);
    assert_eq!(out, "0\n");
    assert_eq!(code, 0);
}

#[test]
fn cohom_of_tautological_dual() {
    let (out, _, _) = flipcheck(&["cohom", "--N", "5", "S{1}Uv"]);
    assert_eq!(out, "H^0 = 5\n");
}

#[test]
fn verify_mut_json_report() {
    let (out, _, code) = flipcheck(&["verify", "--n", "3", "--parity", "odd", "--lemma", "mut", "--format", "json"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r.run.big_n, 7);
    assert_eq!(r.run.parity, "odd");
    assert_eq!(r.summary.pass, r.claims.len());
    assert_eq!(r.claims.len(), 6);
}

#[test]
fn failing_claims_exit_one() {
    let (out, _, code) = flipcheck(&["verify", "--n", "2", "--parity", "odd", "--lemma", "van.6"]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("fail")));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(flipcheck(&["ext", "--N", "5", "--space", "q", "O", "O"]).2, 3);
    assert_eq!(flipcheck(&["cohom", "--N", "5", "Sigma{0,1}Uv"]).2, 3);
    assert_eq!(flipcheck(&["verify", "--n", "2", "--parity", "odd", "--lemma", "van.9"]).2, 3);
    assert_eq!(flipcheck(&["replay", "--script", "/nonexistent.fcs"]).2, 3);
    assert_eq!(flipcheck(&[]).2, 3);
}

#[test]
fn n_cap_and_override() {
    let (_, err, code) = flipcheck(&["cohom", "--N", "16", "O"]);
    assert_eq!(code, 3);
    assert!(err.contains("--allow-large"));
    let (out, _, code) = flipcheck(&["cohom", "--N", "16", "--allow-large", "O"]);
    assert_eq!((out.as_str(), code), ("H^0 = 1\n", 0));
}

#[test]
fn indeterminate_ext_exits_two_or_reports_exact() {
    let (out, _, code) = flipcheck(&["ext", "--N", "5", "--space", "x", "O", "O", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let kind = v["ext"]["kind"].as_str().unwrap();
    assert_eq!(code, if kind == "bounded" { 2 } else { 0 });
}

#[test]
fn chessboard_renders() {
    let (out, _, code) = flipcheck(&["chessboard", "--n", "4", "--render", "ascii"]);
    assert_eq!(code, 0);
    let top = out.lines().nth(1).unwrap();
    assert!(top.ends_with("S   S   S   S   S"));
    let (out, _, _) = flipcheck(&["chessboard", "--n", "3", "--render", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["N"], 7);
    assert_eq!(v["boards"].as_array().unwrap().len(), 2);
    assert_eq!(v["boards"][0]["cells"].as_array().unwrap().len(), 35);
}

#[test]
fn replay_shipped_script() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scripts/odd/sod/n3.fcs");
    let (out, _, code) = flipcheck(&["replay", "--script", path, "--strict"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("ok: 38 moves, 21 objects\n"), "{out}");
}

#[test]
fn replay_reports_bad_move() {
    let dir = std::env::temp_dir().join(format!("flipcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.fcs");
    std::fs::write(&path, "N 5\nexpand A at 0\nexpand A(1H) at 2\nexchange 1\n").unwrap();
    let (out, _, code) = flipcheck(&["replay", "--script", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 1, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["failure"]["index"], 2);
}
