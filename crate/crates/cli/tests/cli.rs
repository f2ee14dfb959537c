use std::process::{Command, Output};

use serde_json::Value;

fn vbl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vbl"))
        .args(args)
        .output()
        .expect("run vbl")
}

fn json(args: &[&str]) -> Value {
    let out = vbl(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn schema_validates(v: &Value) {
    let text = include_str!("../schema/envelope.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

fn f(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} is not a number in {v}"))
}

#[test]
fn mean_corner_row() {
    let v = json(&["mean", "--corner"]);
    schema_validates(&v);
    let row = &v["rows"][0];
    assert!((f(row, "mean") - 0.36351).abs() < 1e-5);
    assert_eq!(row["method"], "closed_form");
    assert!(f(row, "lower_bound") < f(row, "mean"));
}

#[test]
fn mean_edge_row_below_ln2() {
    let v = json(&["mean", "--edge"]);
    let row = &v["rows"][0];
    assert!((f(row, "mean") - 0.61082).abs() < 1e-5);
    assert!(f(row, "mean") < f(row, "upper_bound"));
}

#[test]
fn mean_corner_offset_range_has_one_row_per_value() {
    let v = json(&["mean", "--corner-offset", "0:5:0.25"]);
    schema_validates(&v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    for r in rows {
        let (lo, m, hi) = (f(r, "lower_bound"), f(r, "mean"), f(r, "upper_bound"));
        assert!(lo <= m && m <= hi + 1e-8, "{r}");
    }
}

#[test]
fn mean_halfplane_has_no_upper_bound() {
    let v = json(&["mean", "--halfplane-offset", "1"]);
    schema_validates(&v);
    let row = &v["rows"][0];
    assert!(row["upper_bound"].is_null());
    assert!(f(row, "lower_bound") > 1.0);
    assert!(f(row, "mean") > f(row, "lower_bound"));
}

#[test]
fn table1_rows() {
    let v = json(&["table1"]);
    schema_validates(&v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["location"], "corner");
    assert!((f(&rows[2], "k") - 3.56918).abs() < 1e-3);
}

#[test]
fn secrecy_pmf_at_zero_is_in_isolation() {
    let v = json(&["secrecy", "pmf", "--location", "corner", "--n-max", "0"]);
    schema_validates(&v);
    let k = f(&v["parameters"], "k");
    let nu = f(&v["parameters"], "nu");
    let expect = (1.0 + 10.0 * nu).powf(-k);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert!((f(&v["rows"][0], "in_degree") - expect).abs() < 1e-12);
    assert!((f(&v["rows"][0], "out_degree") - 1.0 / 11.0).abs() < 1e-12);
}

#[test]
fn secrecy_cdf_is_monotone_and_saturates() {
    let v = json(&["secrecy", "cdf", "--location", "bulk", "--n-max", "40", "--lambda-e", "1"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 41);
    let vals: Vec<f64> = rows.iter().map(|r| f(r, "in_degree")).collect();
    assert!(vals.windows(2).all(|w| w[1] >= w[0]));
    // Mean 10 and standard deviation about 6.2: the CDF passes 0.999 only near n = 39.
    assert!((vals[25] - 0.978372).abs() < 1e-6, "{}", vals[25]);
    assert!(vals[40] > 0.999);
    let pmf = json(&["secrecy", "pmf", "--location", "bulk", "--n-max", "25", "--lambda-e", "1"]);
    let summed: f64 = pmf["rows"].as_array().unwrap().iter().map(|r| f(r, "in_degree")).sum();
    assert!((summed - vals[25]).abs() < 1e-9);
}

#[test]
fn secrecy_isolation_log_range() {
    let v = json(&["secrecy", "isolation", "--lambda-e", "0.1:10:log"]);
    schema_validates(&v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    assert_eq!(f(&rows[0], "lambda_e"), 0.1);
    assert_eq!(f(&rows[20], "lambda_e"), 10.0);
    for r in rows {
        assert!(f(r, "p_in_isolated") < f(r, "p_out_isolated"));
    }
}

#[test]
fn simulate_grid_has_121_rows() {
    let v = json(&["simulate", "grid", "--delta", "0.3", "--n", "11", "--trials", "50"]);
    schema_validates(&v);
    assert_eq!(v["rows"].as_array().unwrap().len(), 121);
    assert_eq!(v["rng_seed"], 1);
}

#[test]
fn simulate_degree_and_cell_validate() {
    let v = json(&["simulate", "degree", "--trials", "200", "--at", "bulk"]);
    schema_validates(&v);
    let total: f64 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["out_pmf"].as_f64().unwrap_or(0.0))
        .sum();
    assert!((total - 1.0).abs() < 1e-12);
    let v = json(&["simulate", "cell", "--trials", "100", "--at", "2.5,0"]);
    schema_validates(&v);
    assert_eq!(f(&v["rows"][0], "position_x"), 2.5);
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["--format", "csv", "simulate", "cell", "--trials", "500", "--rng-seed", "4"];
    let a = vbl(&args);
    let b = vbl(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let args = ["secrecy", "isolation", "--location", "edge"];
    let v = json(&args);
    let mut csv_args = vec!["--format", "csv"];
    csv_args.extend_from_slice(&args);
    let out = vbl(&csv_args);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let rows = v["rows"].as_array().unwrap();
    let mut count = 0;
    for (rec, jrow) in rdr.records().zip(rows) {
        let rec = rec.unwrap();
        for (h, cell) in headers.iter().zip(rec.iter()) {
            let c: f64 = cell.parse().unwrap();
            let j = f(jrow, h);
            assert!((c - j).abs() <= 5e-6 * j.abs(), "{h}: csv {c} json {j}");
        }
        count += 1;
    }
    assert_eq!(count, rows.len());
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("vbl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corner.json");
    let out = vbl(&["mean", "--corner", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "mean");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_input_exits_with_code_2() {
    let cases: &[&[&str]] = &[
        &["mean", "--corner-offset", "-1"],
        &["mean", "--corner", "--edge"],
        &["mean"],
        &["secrecy", "pmf", "--lambda-e", "0"],
        &["secrecy", "pmf", "--location", "middle"],
        &["simulate", "cell", "--at", "20,1"],
        &["simulate", "cell", "--trials", "0"],
        &["simulate", "grid", "--delta", "2", "--n", "11"],
        &["secrecy", "isolation", "--lambda-e", "1:0:log"],
    ];
    for args in cases {
        let out = vbl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unwritable_output_exits_with_code_1() {
    let out = vbl(&["mean", "--corner", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(1));
}
