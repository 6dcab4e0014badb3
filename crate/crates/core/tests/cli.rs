use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn abelcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelcs")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = abelcs(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json output");
    (out.status.code().unwrap(), v)
}

const HOPF: &str = "N 4\ncup 1 at 0\ncup* 3 at 2\nx+ at 1\nx+ at 1\ncap at 0\ncap* at 0\n";

#[test]
fn eval_text_and_json_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let slc = dir.path().join("hopf.slc");
    std::fs::write(&slc, HOPF).unwrap();
    let (code, v) = json(&["eval", slc.to_str().unwrap(), "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["exact"], "N^{0} * (-1 t^2)");
    assert_eq!(v["checks"][1]["passed"], true);
    assert_eq!(v["data"]["link"]["lk"], serde_json::json!([[0, 1], [1, 0]]));

    let mirror = serde_json::json!({
        "N": 4,
        "events": [
            {"kind": "cup", "position": 0, "color": 1},
            {"kind": "cupRev", "position": 2, "color": 3},
            {"kind": "crossPos", "position": 1},
            {"kind": "crossPos", "position": 1},
            {"kind": "cap", "position": 0},
            {"kind": "capRev", "position": 0}
        ]
    });
    let js = dir.path().join("hopf.json");
    std::fs::write(&js, mirror.to_string()).unwrap();
    let (code, w) = json(&["eval", js.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["checks"][0]["exact"], v["checks"][0]["exact"]);
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.slc");
    std::fs::write(&bad, "N 2\ncup 1 at 0\ncap at 3\n").unwrap();
    let out = abelcs(&["eval", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(abelcs(&["--N", "3", "gram"]).status.code(), Some(2));
    assert_eq!(abelcs(&["fourier", "--word", "T[z1]+"]).status.code(), Some(2));
    assert_eq!(abelcs(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn algebra_subcommands_pass() {
    for args in [
        vec!["qgroup-check", "--N", "4"],
        vec!["fourier", "--word", "T[b1]+"],
        vec!["--N", "4", "fourier", "--word", "T[a1]+ T[b1]+ T[a1]+"],
        vec!["--N", "2", "--g", "2", "fourier", "--word", "T[a1]+ T[(1,0|0,1)]+"],
        vec!["egorov", "--matrix", "1,0,1,1"],
        vec!["--g", "2", "egorov", "--word", "T[b2]- T[a1]+"],
        vec!["--N", "4", "gram"],
    ] {
        let out = abelcs(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn theta_numeric_strict_mode() {
    let (code, v) = json(&["--N", "4", "theta-numeric"]);
    assert_eq!(code, 0);
    assert!(v["data"]["gramError"].as_f64().unwrap() < 1e-6);
    let (code, _) = json(&["theta-numeric", "--trunc", "1"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["--strict", "theta-numeric", "--trunc", "1"]);
    assert_eq!(code, 1);
    let (code, v) = json(&["theta-numeric", "--Pi", "[[[0.0, -1.0]]]"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("positive definite"));
}

#[test]
fn corpus_round_trip() {
    let (code, v) = json(&["corpus", "--random", "20", "--seed", "3"]);
    assert_eq!(code, 0, "{v}");

    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for name in ["hopf_pos_n2.slc", "torus_2_3_n2.slc"] {
        std::fs::copy(src.join(name), dir.path().join(name)).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    assert_eq!(json(&["corpus", "--dir", d, "--regenerate"]).0, 0);
    assert_eq!(json(&["corpus", "--dir", d]).0, 0);
    std::fs::write(dir.path().join("torus_2_3_n2.slc"), "N 2\ncup 1 at 0\ncap at 0\n").unwrap();
    let (code, v) = json(&["corpus", "--dir", d]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][2]["detail"], "1 mismatched, 0 missing");
}
