use std::collections::BTreeMap;
use std::process::{Command, Output};

fn magdirac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magdirac"))
        .args(args)
        .env_remove("MAGDIRAC_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `(value bits, multiplicity)` pairs from a CSV whose first two columns are
/// value and multiplicity.
fn csv_pairs(s: &str) -> Vec<(u64, u64)> {
    s.lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            let v: f64 = it.next().unwrap().parse().unwrap();
            let m: u64 = it.next().unwrap().parse().unwrap();
            (v.to_bits(), m)
        })
        .collect()
}

fn json_pairs(v: &serde_json::Value, key: &str) -> Vec<(u64, u64)> {
    v[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["value"].as_f64().unwrap().to_bits(),
                e["multiplicity"].as_u64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn sphere_csv_and_json_agree_bitwise() {
    for t in ["0", "-1.3", "0.7071067811865476", "2.5"] {
        let j = magdirac(&["sphere", "--t", t, "--cutoff", "6", "--json"]);
        let c = magdirac(&["sphere", "--t", t, "--cutoff", "6", "--csv"]);
        assert!(j.status.success() && c.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
        assert_eq!(json_pairs(&v, "entries"), csv_pairs(&stdout(&c)), "t={t}");
    }
}

#[test]
fn torus_csv_and_json_agree_bitwise() {
    let base = [
        "torus",
        "--basis",
        "[[1,0.2],[0.1,1.3]]",
        "--delta",
        "1,0",
        "--theta",
        "0.3,0",
        "--A",
        "0.4,-1.1",
        "--cutoff",
        "12",
    ];
    let j = magdirac(&[&base[..], &["--json"]].concat());
    let c = magdirac(&[&base[..], &["--csv"]].concat());
    assert!(j.status.success() && c.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(json_pairs(&v, "eigenvalues"), csv_pairs(&stdout(&c)));
    assert!(v["zero_mode"].is_null());
    for e in v["eigenvalues"].as_array().unwrap() {
        assert!(!e["modes"].as_array().unwrap().is_empty());
    }
}

#[test]
fn torus_zero_mode_is_reported() {
    let o = magdirac(&[
        "torus",
        "--basis",
        "[[1,0],[0,1]]",
        "--cutoff",
        "3",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["zero_mode"], serde_json::json!([0, 0]));
    let zero = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["value"] == 0.0)
        .unwrap();
    assert_eq!(zero["multiplicity"], 2);
}

#[test]
fn curve_is_deterministic_and_sorted() {
    let args = [
        "sphere-curve",
        "--t-range",
        "-5:5:101",
        "--k-max",
        "3",
        "--csv",
    ];
    let a = stdout(&magdirac(&args));
    let b = stdout(&magdirac(&args));
    assert_eq!(a, b);
    let mut lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], "t,family,k,p,sign,value");
    let rows: Vec<&str> = lines.split_off(1);
    let key = |l: &str| {
        let f: Vec<&str> = l.split(',').collect();
        let t: f64 = f[0].parse().unwrap();
        (
            f[1].to_string(),
            f[2].parse::<i64>().unwrap(),
            f[3].parse::<i64>().unwrap(),
            f[4].parse::<i64>().unwrap(),
            (t * 1e6).round() as i64,
        )
    };
    let mut resorted = rows.clone();
    resorted.sort_by_key(|l| key(l));
    assert_eq!(rows, resorted);
    for l in &rows {
        let v: f64 = l.rsplit(',').next().unwrap().parse().unwrap();
        assert!(v.abs() <= 5.0);
    }
}

#[test]
fn curve_meets_at_collision() {
    let out = stdout(&magdirac(&[
        "sphere-curve",
        "--t-range",
        "-5:5:5",
        "--k-max",
        "2",
        "--csv",
    ]));
    let mut at: BTreeMap<String, f64> = BTreeMap::new();
    for l in out.lines().skip(1) {
        let f: Vec<&str> = l.split(',').collect();
        if f[0] == "-2.5" && f[1] == "BRANCH" && f[4] == "1" {
            at.insert(format!("{},{}", f[2], f[3]), f[5].parse().unwrap());
        }
    }
    assert!((at["1,0"] - at["2,1"]).abs() < 1e-12);
}

#[test]
fn verify_suites_pass() {
    let o = magdirac(&[
        "verify",
        "sphere-blocks",
        "--k-max",
        "5",
        "--t-grid",
        "-2:2:9",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-12);
    assert!(v["checks"].as_u64().unwrap() > 0);

    let o = magdirac(&["verify", "torus-modes", "--n", "3", "--samples", "50"]);
    assert!(o.status.success());

    let o = magdirac(&[
        "verify",
        "gauge",
        "--basis",
        "[[1,0],[0,1]]",
        "--A",
        "1.2566370614359172,2.890265241302609",
        "--f-terms",
        r#"[{"freq":[1,0],"coeff":[0.1,0.05]}]"#,
        "--cutoffs",
        "3,5,7",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(o.status.success(), "{v}");
    assert_eq!(v["residuals"].as_array().unwrap().len(), 3);
}

#[test]
fn bounds_reports() {
    let o = magdirac(&[
        "bounds",
        "--model",
        "sphere",
        "--t",
        "0",
        "--which",
        "friedrich,hijazi,basic,diamagnetic",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let b = v["bounds"].as_array().unwrap();
    assert_eq!(b.len(), 4);
    assert_eq!(b[0]["report"]["equality"], true);

    let o = magdirac(&[
        "bounds",
        "--model",
        "torus",
        "--basis",
        "[[1,0],[0,1]]",
        "--delta",
        "1,0",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let hijazi = v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["bound"] == "hijazi")
        .unwrap();
    assert_eq!(hijazi["applicable"], false);
}

#[test]
fn collisions_include_known_pair() {
    let o = magdirac(&["collisions", "--k-max", "2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let hit = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| {
            r["first"] == serde_json::json!([1, 0]) && r["second"] == serde_json::json!([2, 1])
        })
        .unwrap();
    assert_eq!(hit["t_exact"], "-5/2");
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        &["torus", "--basis", "[[1,0],"][..],
        &["torus", "--basis", "[[1,0],[2,0]]"][..],
        &["torus", "--basis", "[[1,0],[0,1]]", "--delta", "2,0"][..],
        &["sphere", "--t", "0", "--cutoff", "-1"][..],
        &["bounds", "--model", "sphere", "--which", "nope"][..],
        &["sphere", "--bogus"][..],
    ] {
        let o = magdirac(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn tolerance_override_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_magdirac"))
        .args(["sphere", "--t", "0", "--json"])
        .env("MAGDIRAC_TOLERANCE", "banana")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_magdirac"))
        .args(["sphere", "--t", "0", "--json"])
        .env("MAGDIRAC_TOLERANCE", "1e-6")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["merge_tolerance"], 1e-6);
}
