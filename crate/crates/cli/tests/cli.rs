use std::path::PathBuf;
use std::process::Command;

fn scf(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_scf")).args(args).output().expect("scf runs");
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

#[test]
fn bracket_example() {
    let (code, out, _) = scf(&["bracket", "--alg", "n2", "J:1", "Gp:-1/2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "Gp:1/2");
}

#[test]
fn rank_example() {
    let (code, out, _) = scf(&["rank", "--alg", "n3", "--delta", "-3/4", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"rank":12,"case":"4D+L+2=0"}"#);
}

#[test]
fn json_outputs_carry_schema() {
    let (code, out, _) = scf(&["rank", "--alg", "sn4", "--delta", "1", "--lambda", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rank"], 8);
    let (_, out, _) = scf(&["bracket", "--alg", "n2", "--json", "Gp:1/2", "Gm:-1/2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["terms"].as_array().unwrap().len() >= 2);
}

#[test]
fn singular_and_locus() {
    let (code, out, _) = scf(&["singular", "--alg", "n2", "--delta", "-1/2", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("Gm_v") && out.contains("GpGm_v"), "{out}");
    let (code, out, _) = scf(&["locus", "--alg", "n2", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("Delta = -1/2") && out.contains("Delta = 1/2"), "{out}");
    let (_, sym, _) = scf(&["singular", "--alg", "n2", "--delta", "sym", "--lambda", "1", "--dpow", "2"]);
    assert_eq!(sym, out);
}

#[test]
fn exit_codes() {
    assert_eq!(scf(&["bracket", "--alg", "zz", "J:1", "J:1"]).0, 2);
    assert_eq!(scf(&["bracket", "--alg", "n2", "J:1"]).0, 2);
    assert_eq!(scf(&["bracket", "--alg", "n2", "Q:1", "J:1"]).0, 2);
    assert_eq!(scf(&["rank", "--alg", "n3", "--delta", "x/y", "--lambda", "1"]).0, 2);
    assert_eq!(scf(&["rank", "--alg", "bn4", "--delta", "1", "--lambda", "1"]).0, 2);
    assert_eq!(scf(&["verify-paper", "--suite", "nope"]).0, 2);
    assert_eq!(scf(&["--help"]).0, 0);
    let dir = tempdir("bad");
    std::fs::write(dir.join("classification.md"), "stale\n").unwrap();
    assert_eq!(scf(&["tables", "--check", dir.to_str().unwrap()]).0, 1);
}

fn tempdir(tag: &str) -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("scf-{tag}"));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn committed_tables_are_current() {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tables");
    let (code, out, err) = scf(&["tables", "--check", golden.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
    let dir = tempdir("regen");
    assert_eq!(scf(&["tables", "--out", dir.to_str().unwrap()]).0, 0);
    for f in ["classification.md", "classification.json", "lambda/algebras.json", "lambda/n2_modules.json"] {
        assert_eq!(std::fs::read(dir.join(f)).unwrap(), std::fs::read(golden.join(f)).unwrap(), "{f}");
    }
}
