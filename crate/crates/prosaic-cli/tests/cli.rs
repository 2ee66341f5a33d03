use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn prosaic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prosaic"))
        .args(args)
        .output()
        .expect("run prosaic")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--emit", "json"]);
    let o = prosaic(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], prosaic_core::SCHEMA_VERSION);
    v
}

#[test]
fn classify_small_primes() {
    let v = json(&["classify", "--range", "50"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(
        (rows[0]["p"].as_u64(), rows[0]["label"].as_str()),
        (Some(17), Some("P3"))
    );
    assert_eq!(
        (rows[1]["p"].as_u64(), rows[1]["label"].as_str()),
        (Some(41), Some("P1"))
    );
    let v = json(&["classify", "--range", "42..50"]);
    assert!(v["rows"].as_array().unwrap().is_empty());
    let v = json(&["classify", "--range", "130"]);
    let r113 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["p"] == 113)
        .unwrap()
        .clone();
    assert_eq!(r113["label"], "P1");
    assert_eq!(r113["p1star"], true);
}

#[test]
fn capacity_guard() {
    let o = prosaic(&["classify", "--range", "20000000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("CAPACITY_ERROR"));
    let o = prosaic(&["classify", "--range", "1000", "--bound", "500"]);
    assert!(!o.status.success());
    let o = prosaic(&["classify", "--range", "10", "--bound", "20000000"]);
    assert!(!o.status.success());
}

#[test]
fn feasibility_rows() {
    let v = json(&["feasibility", "41"]);
    assert_eq!(v["rows"][0]["max_g"], 3);
    assert_eq!(v["rows"][0]["h2"], 8);
    let v = json(&["feasibility", "17"]);
    assert_eq!(v["rows"][0]["max_g"], 1);
    let v = json(&["feasibility", "41", "--g", "4"]);
    assert_eq!(v["rows"][0]["feasible"], false);
    let o = prosaic(&["feasibility", "13"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("DOMAIN_ERROR") && err.contains("1 mod 8"),
        "{err}"
    );
}

#[test]
fn golden_tables_and_corruption() {
    let o = prosaic(&["verify-tables"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 mismatches"));
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(prosaic(&["verify-tables", "--export", d]).status.success());
    assert!(prosaic(&["verify-tables", "--dir", d]).status.success());
    let path = dir.path().join("ab1.csv");
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replacen("0,1,73,1193", "0,1,73,1195", 1)).unwrap();
    let o = prosaic(&["verify-tables", "--dir", d, "--emit", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bad: Vec<&Value> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .collect();
    assert_eq!(bad.len(), 1);
    assert!(bad[0]["expected"].as_str().unwrap().contains("1195"));
    assert!(bad[0]["actual"].as_str().unwrap().contains("1193"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("h2.json");
    let c = cache.to_str().unwrap();
    let cold = prosaic(&["h2", "--range", "3000", "--cache", c]);
    assert!(cold.status.success());
    assert!(cache.exists());
    let warm = prosaic(&["h2", "--range", "3000", "--cache", c]);
    assert_eq!(cold.stdout, warm.stdout);
    let plain = prosaic(&["h2", "--range", "3000"]);
    assert_eq!(cold.stdout, plain.stdout);
    let t1 = prosaic(&["verify-tables", "--cache", c]);
    assert!(t1.status.success());
    assert_eq!(t1.stdout, prosaic(&["verify-tables", "--cache", c]).stdout);
    fs::write(&cache, "{ not json").unwrap();
    let o = prosaic(&["h2", "41", "--cache", c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("CACHE_CORRUPT"));
    assert_eq!(fs::read_to_string(&cache).unwrap(), "{ not json");
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let head = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|x| x.unwrap().iter().map(String::from).collect())
        .collect();
    (head, rows)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        o => o.to_string(),
    }
}

#[test]
fn csv_and_json_agree() {
    let cases: [&[&str]; 5] = [
        &["classify", "--range", "5000"],
        &["h2", "--range", "2000"],
        &["phi-bound", "--h2", "16"],
        &[
            "search-pairs",
            "mild",
            "--range",
            "-7..5",
            "--range",
            "-7..13",
        ],
        &["verify-tables"],
    ];
    for args in cases {
        let v = json(args);
        let mut a = args.to_vec();
        a.extend(["--emit", "csv"]);
        let (head, rows) = csv_rows(&stdout(&prosaic(&a)));
        let cols: Vec<String> = v["columns"].as_array().unwrap().iter().map(cell).collect();
        assert_eq!(head, cols);
        let jrows: Vec<Vec<String>> = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| cols.iter().map(|c| cell(&r[c])).collect())
            .collect();
        assert_eq!(rows, jrows, "{args:?}");
    }
}

#[test]
fn jobs_do_not_change_output() {
    let cases: [&[&str]; 4] = [
        &["classify", "--range", "30000"],
        &["h2", "--range", "20000"],
        &["feasibility", "--range", "5000"],
        &[
            "search-pairs",
            "ab1",
            "--range",
            "-4..4",
            "--range",
            "-14..4",
        ],
    ];
    for args in cases {
        for emit in ["json", "csv"] {
            let mut a = args.to_vec();
            a.extend(["--emit", emit]);
            let one = prosaic(&[a.as_slice(), &["--jobs", "1"]].concat());
            let many = prosaic(&[a.as_slice(), &["--jobs", "6"]].concat());
            assert!(one.status.success());
            assert_eq!(one.stdout, many.stdout, "{args:?}");
        }
    }
}

#[test]
fn decompose_from_file_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let l = json(&["lambda", "6"]);
    fs::write(&path, l["detail"]["g1_sigma_v"].to_string()).unwrap();
    let v = json(&["decompose", path.to_str().unwrap()]);
    assert_eq!(v["detail"]["balanced"], true);
    assert_eq!(v["rows"][0]["d"], 3);
    let xi = json(&["lambda", "4", "--e", "1"]);
    fs::write(&path, xi["detail"]["g1_sigma_l"].to_string()).unwrap();
    let v = json(&["decompose", path.to_str().unwrap()]);
    assert_eq!(v["detail"]["balanced"], false);
    let a = prosaic(&[
        "decompose",
        "--random-dim",
        "16",
        "--seed",
        "11",
        "--emit",
        "json",
    ]);
    let b = prosaic(&[
        "decompose",
        "--random-dim",
        "16",
        "--seed",
        "11",
        "--emit",
        "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
    fs::write(&path, r#"{"dim":2,"sv":[2,1],"sl":[3,2],"vm":[2]}"#).unwrap();
    let o = prosaic(&["decompose", path.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("DOMAIN_ERROR"));
}

#[test]
fn family_and_richelot() {
    let v = json(&["family", "ab1", "0", "1"]);
    assert_eq!(v["rows"][0]["m"], "73");
    assert_eq!(v["rows"][0]["n"], "1193");
    assert_eq!(v["rows"][0]["conductor"], "87089");
    let v = json(&["family", "ex2", "1", "-3"]);
    assert_eq!(v["rows"][0]["m"], Value::Null);
    assert_eq!(v["rows"][0]["conductor"], "10217");
    let o = prosaic(&["family", "ex2", "2", "5"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("HYPOTHESIS_VIOLATION"));
    for args in [
        &["richelot", "ab1", "-3", "-8"][..],
        &["richelot", "mild", "3", "13"],
        &["richelot", "1797"],
    ] {
        let v = json(args);
        assert_eq!(v["rows"][0]["closure_isomorphic"], true, "{args:?}");
    }
    let v = json(&["richelot", "1797"]);
    let want = "-3689751223810274623488";
    assert_eq!(v["rows"][0]["stated_delta_c"], want);
    assert!(Path::new(env!("CARGO_BIN_EXE_prosaic")).exists());
}
