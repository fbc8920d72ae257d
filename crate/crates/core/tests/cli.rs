//! End-to-end tests of the zerocycle binary: exit codes, report shape, and
//! byte stability for fixed seeds.

use std::process::Command;

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zerocycle"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn write_problem(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("zerocycle-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const TOWER: &str = r#"{
  "factors": [["0","1","-1","1"], ["-1","0","2","1"]],
  "cycle": [1,-1,0,1,-1,0,1,-1,0],
  "seed": 11,
  "samples": 6
}"#;

#[test]
fn analyze_solve_verify_flow() {
    let path = write_problem("tower.json", TOWER);
    let p = path.to_str().unwrap();

    let (code, report) = run_bin(&["--command", "analyze", "--input", p]);
    assert_eq!(code, 0, "{report}");
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["balanced"], serde_json::json!(true));
    assert_eq!(v["hypothesis_ok"], serde_json::json!(true));
    assert_eq!(v["monodromy"]["tau_infinity_ok"], serde_json::json!(true));
    assert_eq!(v["chain"].as_array().unwrap().len(), 2);
    assert!(v["labeling"].as_str().unwrap().contains("tau_infinity"));

    let (code, report) = run_bin(&["--command", "solve", "--input", p]);
    assert_eq!(code, 0, "{report}");
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["space"]["node"], serde_json::json!("power_sum_lift"));
    assert!(!v["samples"].as_array().unwrap().is_empty());

    // z is a member; z^3 is not
    let (code, report) = run_bin(&["--command", "verify", "--input", p, "--g", "0,1"]);
    assert_eq!(code, 0, "{report}");
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["verdict"], serde_json::json!("member_numeric"));

    let (code, report) = run_bin(&["--command", "verify", "--input", p, "--g", "0,0,0,1"]);
    assert_eq!(code, 0, "{report}");
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["verdict"], serde_json::json!("not_member"));

    let (code, report) = run_bin(&["--command", "oracle", "--input", p]);
    assert_eq!(code, 0, "{report}");
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["semidirect"][0]["status"], serde_json::json!("ok"));
    assert_eq!(v["span_balanced"], serde_json::json!(true));
}

#[test]
fn byte_stable_output() {
    let path = write_problem("stable.json", TOWER);
    let p = path.to_str().unwrap();
    for cmd in ["analyze", "solve", "verify", "oracle"] {
        let mut args = vec!["--command", cmd, "--input", p];
        if cmd == "verify" {
            args.extend(["--g", "0,1"]);
        }
        let (c1, r1) = run_bin(&args);
        let (c2, r2) = run_bin(&args);
        assert_eq!(c1, 0, "{cmd}: {r1}");
        assert_eq!((c1, r1), (c2, r2), "{cmd} must be byte-stable");
    }
}

#[test]
fn exit_codes() {
    // input error: cycle length mismatch
    let bad = write_problem("bad.json", r#"{"poly": ["0","0","1"], "cycle": [1,-1,0]}"#);
    let (code, _) = run_bin(&["--command", "analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 1);

    // unknown command
    let ok = write_problem("ok.json", r#"{"poly": ["0","0","1"], "cycle": [1,-1]}"#);
    let (code, _) = run_bin(&["--command", "bogus", "--input", ok.to_str().unwrap()]);
    assert_eq!(code, 1);

    // missing input file
    let (code, _) = run_bin(&["--command", "analyze", "--input", "/nonexistent.json"]);
    assert_eq!(code, 1);

    // hypothesis violation: a merged two-factor tower
    let merged = write_problem(
        "merged.json",
        r#"{"factors": [["-2","0","3","1"],["0","0","1"]], "cycle": [1,-1,1,-1,1,-1]}"#,
    );
    let (code, report) = run_bin(&["--command", "solve", "--input", merged.to_str().unwrap()]);
    assert_eq!(code, 2, "{report}");

    // unsupported factor: a quintic outside the three classes over Q(i)
    let quintic = write_problem(
        "quintic.json",
        r#"{"poly": ["0","5","0","-40","0","64"], "cycle": [1,-1,1,-1,0]}"#,
    );
    let (code, report) = run_bin(&["--command", "analyze", "--input", quintic.to_str().unwrap()]);
    assert_eq!(code, 2, "{report}");

    // text format renders
    let path = write_problem("tower2.json", TOWER);
    let (code, report) = run_bin(&[
        "--command",
        "solve",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert!(report.contains("sum s_i g_i"), "{report}");
}

#[test]
fn element_cap_is_a_first_class_outcome() {
    let path = write_problem("cap.json", TOWER);
    let (code, report) = run_bin(&[
        "--command",
        "oracle",
        "--input",
        path.to_str().unwrap(),
        "--element-cap",
        "10",
    ]);
    assert_eq!(code, 0, "{report}");
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(
        v["semidirect"][0]["status"],
        serde_json::json!("cap_exceeded")
    );
    assert_eq!(
        v["brute_force_balanced"]["status"],
        serde_json::json!("cap_exceeded")
    );
}
