use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn iwasawa(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_iwasawa")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = iwasawa(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).expect("valid json")
}

#[test]
fn dim_ialpha_both() {
    let (code, out, _) = iwasawa(&["dim-ialpha", "--p", "3", "--series", "1*T^1", "--alpha", "1", "--both"]);
    assert_eq!(code, 0);
    assert!(out.contains("alpha=1: dim=1 "), "{out}");
    assert!(out.contains("alpha=-1: dim=LOWER_BOUND"), "{out}");
    assert!(out.contains("min_le_1 = true"), "{out}");

    let v = json(&["dim-ialpha", "--p", "3", "--series", "1*T^1", "--alpha", "1", "--both"]);
    assert_eq!(v["plus"]["dim"]["kind"], "EXACT");
    assert_eq!(v["plus"]["dim"]["value"], 1);
    assert_eq!(v["minus"]["dim"]["kind"], "LOWER_BOUND");
    assert_eq!(v["min_le_1"], true);
}

#[test]
fn fractional_alpha() {
    let v = json(&["dim-ialpha", "--p", "5", "--series", "5*T^0 + 1*T^1", "--alpha", "1/2"]);
    assert_eq!(v["certified"], true);
    assert_eq!(v["alpha"], "1/2");
}

#[test]
fn fit_examples() {
    let (code, out, _) = iwasawa(&["fit", "--p", "3", "--points", "0:3,1:5,2:7,3:9"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "lambda=2 mu=0 nu=3 n0=0");

    let (code, out, _) = iwasawa(&["fit", "--p", "3", "--points", "0:0,1:0,2:1,3:2,4:4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "NO_FIT");

    let v = json(&["fit", "--p", "3", "--points", "0:4,1:6,2:8,3:10", "--law", "2,1,6"]);
    assert_eq!(v["fit"]["nu"], 4);
    assert_eq!(v["law"]["nu"], 4);
    assert_eq!(v["all_pass"], true);

    let (code, _, _) = iwasawa(&["fit", "--p", "3", "--points", "0:4,1:6,2:8,3:10", "--law", "2,1,7"]);
    assert_eq!(code, 1);
    let (code, _, err) = iwasawa(&["fit", "--p", "3", "--points", "0:4,1:6"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn prep_reports_factorisation() {
    let (code, out, _) = iwasawa(&["prep", "--p", "3", "--N", "6", "--M", "12", "--series", "3*T^0 + 1*T^2"]);
    assert_eq!(code, 0);
    assert!(out.contains("mu = 0"), "{out}");
    assert!(out.contains("lambda = 2"), "{out}");

    let v = json(&["prep", "--p", "3", "--series", "9*T^0 + 9*T^1 + 3*T^2"]);
    assert_eq!(v["mu"], 1);
    assert_eq!(v["lambda"], 2);
    assert_eq!(v["certified"], true);
    assert_eq!(v["distinguished"], serde_json::json!(["3", "3", "1"]));
}

#[test]
fn scan_is_deterministic() {
    let args = ["scan-lemma31", "--p", "5", "--count", "40", "--seed", "7"];
    let (code, a, _) = iwasawa(&args);
    assert_eq!(code, 0);
    assert!(a.contains("passed 40/40"), "{a}");
    let (_, b, _) = iwasawa(&args);
    assert_eq!(a, b);

    let v = json(&args);
    assert_eq!(v["total"], 40);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn check_records_json() {
    let v = json(&["check", "--records", &data("t1_m7.json")]);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 8);
    let passing: Vec<u64> =
        reports.iter().filter(|r| r["conclusion_zp2"] == true).map(|r| r["params"]["d"].as_u64().unwrap()).collect();
    assert_eq!(passing, [26, 431, 473, 563, 566]);
    for r in reports {
        assert_eq!(r["hypotheses"].as_array().unwrap().len(), 6);
        assert!(["PASS", "FAIL", "UNKNOWN"].contains(&r["hypotheses"][1]["status"].as_str().unwrap()));
    }
}

#[test]
fn tables_against_published_rows() {
    let (code, out, _) =
        iwasawa(&["tables", "--family", "biquadratic", "--records", &data("t1_m7.json"), "--expect", "paper"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("5/5 confirmed"), "{out}");

    let v = json(&["tables", "--family", "biquadratic", "--records", &data("t1_m10.json"), "--expect", "paper"]);
    assert_eq!(v[0]["matches_published"], true);
    assert_eq!(v[0]["published"]["confirmed"], serde_json::json!([89, 557]));

    let v = json(&["tables", "--family", "non-galois", "--records", &data("t3_m13.json"), "--expect", "paper"]);
    assert_eq!(v[0]["published"]["confirmed"], serde_json::json!([250]));
}

#[test]
fn tables_reports_missing_records() {
    let (code, _, err) = iwasawa(&[
        "tables",
        "--family",
        "biquadratic",
        "--records",
        &data("t1_m7.json"),
        "--row",
        "7",
        "--params",
        "26,431,755",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("d=755"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(iwasawa(&["fit"]).0, 2);
    assert_eq!(iwasawa(&["prep", "--p", "9", "--series", "T"]).0, 2);
    assert_eq!(iwasawa(&["tables", "--family", "quintic", "--records", &data("t1_m7.json")]).0, 2);
    assert_eq!(iwasawa(&["check", "--records", "/nonexistent.json"]).0, 2);
    assert_eq!(iwasawa(&["--format", "yaml", "fit", "--p", "3", "--points", "0:1"]).0, 2);
}

#[test]
fn malformed_record_files_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "schema2.json",
            r#"[{"family": "CUSTOM", "params": {}, "defining_poly": [1, 0, 0, 0, 1], "p": 3, "is_cm": true, "splits_completely": "UNKNOWN", "clgroup_k": "UNKNOWN", "clgroup_k_cy1": "UNKNOWN", "clgroup_kplus_cy1_trivial": "UNKNOWN", "vp_hk": "UNKNOWN", "grh_assumed": false, "backend": "x", "schema": 2}]"#,
        ),
        (
            "extra.json",
            r#"[{"family": "CUSTOM", "params": {}, "defining_poly": [1, 0, 0, 0, 1], "p": 3, "is_cm": true, "splits_completely": "UNKNOWN", "clgroup_k": "UNKNOWN", "clgroup_k_cy1": "UNKNOWN", "clgroup_kplus_cy1_trivial": "UNKNOWN", "vp_hk": "UNKNOWN", "grh_assumed": false, "backend": "x", "schema": 1, "extra": 0}]"#,
        ),
        ("notjson.json", "[{"),
    ];
    for (name, body) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let (code, _, err) = iwasawa(&["check", "--records", path.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}: {err}");
        assert!(err.contains("invalid record") || err.contains("parse error"), "{name}: {err}");
    }
}
