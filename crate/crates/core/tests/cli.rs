use std::process::Command;

use toda_core::cert::Certificate;
use toda_core::cli::{replay, run, EXIT_OK, EXIT_TOO_LARGE, EXIT_USAGE, EXIT_VERIFY};

fn toda(args: &[&str]) -> i32 {
    run(std::iter::once("toda").chain(args.iter().copied()))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("toda-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn solve_then_replay() {
    let path = tmp("g2_short_6.json");
    let p = path.to_str().unwrap();
    assert_eq!(toda(&["solve", "--type", "G2", "--beta", "short", "--degree", "6", "--out", p]), EXIT_OK);
    assert_eq!(toda(&["verify", "--replay", p, "--out", tmp("replay.json").to_str().unwrap()]), EXIT_OK);

    let cert = Certificate::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert.kernel_dim, Some(0));
    assert_eq!(cert.inputs["type"], "G2");
    assert_eq!(cert.inputs["beta"], "short");
    assert!(replay(&cert).unwrap().passed());
}

#[test]
fn tampered_witness_fails_replay() {
    let path = tmp("a2_3.json");
    let p = path.to_str().unwrap();
    assert_eq!(toda(&["solve", "--type", "A2", "--degree", "3", "--out", p]), EXIT_OK);
    let mut cert = Certificate::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    cert.witnesses[0].terms.pop();
    let bad = tmp("a2_3_bad.json");
    std::fs::write(&bad, cert.to_json()).unwrap();
    assert_eq!(toda(&["verify", "--replay", bad.to_str().unwrap(), "--out", tmp("r.json").to_str().unwrap()]), EXIT_VERIFY);
}

#[test]
fn certificates_are_byte_stable() {
    let a = tmp("b2a.json");
    let b = tmp("b2b.json");
    for p in [&a, &b] {
        assert_eq!(toda(&["solve", "--type", "B2", "--beta", "short", "--degree", "4", "--out", p.to_str().unwrap()]), EXIT_OK);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn family_verification() {
    let out = tmp("a3_family.json");
    assert_eq!(toda(&["verify", "--type", "A3", "--out", out.to_str().unwrap()]), EXIT_OK);
    let cert = Certificate::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert.residuals.len(), 3);
    assert_eq!(toda(&["verify", "--replay", out.to_str().unwrap(), "--out", tmp("r2.json").to_str().unwrap()]), EXIT_OK);
}

#[test]
fn fold_reports() {
    let out = tmp("e6.json");
    assert_eq!(toda(&["fold", "--type", "e6-g2", "--out", out.to_str().unwrap()]), EXIT_OK);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("ratio_at_(0,1)"));
    let cert = Certificate::from_json(&text).unwrap();
    assert_eq!(cert.scalars["non-proportionality: ratio_at_(1,0)"].to_string(), "9/22");
    assert_eq!(toda(&["verify", "--replay", out.to_str().unwrap(), "--out", tmp("r3.json").to_str().unwrap()]), EXIT_OK);
    assert_eq!(toda(&["fold", "--type", "d4-g2"]), EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_toda");
    let code = |args: &[&str], cap: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args);
        if let Some(v) = cap {
            c.env("TODA_CAP", v);
        } else {
            c.env_remove("TODA_CAP");
        }
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(code(&["table"], None), EXIT_OK);
    assert_eq!(code(&["solve", "--type", "E7", "--degree", "18"], None), EXIT_TOO_LARGE);
    assert_eq!(code(&["solve", "--type", "A2", "--degree", "3"], Some("5")), EXIT_TOO_LARGE);
    assert_eq!(code(&["solve", "--type", "A2", "--degree", "3"], Some("100")), EXIT_OK);
    assert_eq!(code(&["solve", "--type", "A2"], None), EXIT_USAGE);
    assert_eq!(code(&["bench", "--type", "A2", "--degree", "4", "--seed", "1"], None), EXIT_OK);

    let out = Command::new(bin).args(["table"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("F4\t2,6,8,12\t11\t8"));
}
