//! End-to-end checks of the binary: grammar round trips, exit codes, JSON
//! and DOT emission, and output determinism.

use std::process::Command;

fn frt() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frt"))
}

#[test]
fn descriptor_grammar_round_trips() {
    use frt_core::descriptor::GroupDescriptor;
    for s in [
        "SL2:E8",
        "SL2:A0",
        "Cox(4,2;D4,A3)",
        "Cox(12,12;E6,E6)",
        "Ab(2,2,0)",
        "Ab(6,4,3)",
        "G(6,2,2)",
        "G(1,1,2)",
        "ST13",
        "ST22",
    ] {
        let d = GroupDescriptor::parse(s).unwrap();
        assert_eq!(d.render(), s);
    }
}

#[test]
fn germ_grammar_round_trips() {
    use frt_core::curves::CurveGermSpec;
    for s in ["smooth(3)", "cusp(2)", "node(1)", "twosmooth(4)", "tangentcusp"] {
        let g = CurveGermSpec::parse(s).unwrap();
        assert_eq!(g.render(), s);
    }
}

#[test]
fn usage_error_exits_2() {
    let out = frt().arg("group").arg("Zzz(1)").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = frt().arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn group_json_and_determinism() {
    let dir = std::env::temp_dir().join("frt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("group.json");
    let run = || {
        let out = frt()
            .args(["group", "G(4,2,2)", "--json"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success());
        (
            String::from_utf8(out.stdout).unwrap(),
            std::fs::read_to_string(&path).unwrap(),
        )
    };
    let (stdout1, json1) = run();
    let (stdout2, json2) = run();
    assert_eq!(stdout1, stdout2);
    assert_eq!(json1, json2);
    let v: serde_json::Value = serde_json::from_str(&json1).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["order"], 16);
}

#[test]
fn mckay_dot_output() {
    let dir = std::env::temp_dir().join("frt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mckay.dot");
    let out = frt()
        .args(["mckay", "SL2:D4", "--check-quotient"])
        .arg("--dot")
        .arg(&path)
        .output()
        .unwrap();
    // --check-quotient needs a Goursat datum; SL2 descriptors are rejected
    assert_eq!(out.status.code(), Some(2));
    let out = frt()
        .args(["mckay", "SL2:D4"])
        .arg("--dot")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph {"));
    assert!(dot.contains("->"));
}

#[test]
fn mckay_quotient_check_on_datum() {
    let out = frt()
        .args(["mckay", "Cox(4,2;D4,A3)", "--check-quotient"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("quotient formula matches: true"));
}

#[test]
fn logterm_cli() {
    let out = frt()
        .args(["logterm", "--type", "E7", "--indices", "2,2", "--trace"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("log terminal"));
    assert!(text.contains("-1/2"));
    // a germ that is not log terminal still exits 0 (the verdict is the
    // output; exit 1 is reserved for verification failures)
    let out = frt()
        .args(["logterm", "--type", "A13", "--indices", "2,3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("not log terminal"));
}

#[test]
fn ramify_cli() {
    let out = frt().args(["ramify", "ST4"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("agrees with table: true"));
}

#[test]
fn curve_cli_json() {
    let dir = std::env::temp_dir().join("frt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.json");
    let out = frt()
        .args(["curve", "classify", "--e", "1", "--n", "3", "--germ", "cusp(1)"])
        .arg("--json")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["frt"], true);
    assert_eq!(v["group"], "G(9,3,2)");
    assert_eq!(v["deleted_vertex_count"], 3);
}

#[test]
fn verify_subcommand_small() {
    let out = frt()
        .args(["verify", "--suites", "mckay,partition"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ALL PASS"));
}
