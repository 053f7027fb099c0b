//! End-to-end tests of the `secrecylab` binary: flag/file merging, exit
//! codes, output determinism, and CSV round-trip against the library.

use secrecylab_core::binary::{self, AuxParams, BinarySetup};
use secrecylab_core::gaussian::{self, GaussianSetup};
use std::collections::HashMap;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_secrecylab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[derive(Debug)]
struct Row {
    scheme: String,
    x: f64,
    delta: f64,
    params: HashMap<String, f64>,
    feasible: bool,
}

fn parse_csv(text: &str) -> Vec<Row> {
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("scheme,x,Delta,D_E,params,feasible"),
        "header mismatch"
    );
    lines
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 6, "bad row: {line}");
            let params = fields[4]
                .split(';')
                .filter(|kv| !kv.is_empty())
                .map(|kv| {
                    let (k, v) = kv.split_once('=').expect("param format");
                    (k.to_string(), v.parse::<f64>().expect("param value"))
                })
                .collect();
            Row {
                scheme: fields[0].to_string(),
                x: fields[1].parse().unwrap(),
                delta: fields[2].parse().unwrap(),
                params,
                feasible: fields[5].parse().unwrap(),
            }
        })
        .collect()
}

#[test]
fn gaussian_defaults_fill_and_rows_sort() {
    let out = run(&[
        "gaussian-sweep",
        "--d-start",
        "0.4",
        "--d-stop",
        "0.6",
        "--d-step",
        "0.1",
    ]);
    assert!(out.status.success());
    let rows = parse_csv(&stdout(&out));
    // defaults P=1, P_Y=0.5, P_Z=1, P_E=1: optimal at D=0.5 must be 3/7
    let optimal: Vec<&Row> = rows.iter().filter(|r| r.scheme == "optimal").collect();
    assert_eq!(optimal.len(), 3);
    let mid = optimal.iter().find(|r| (r.x - 0.5).abs() < 1e-9).unwrap();
    let de = gaussian::equivocation_to_de(mid.delta);
    assert!((de - 3.0 / 7.0).abs() < 1e-9, "de={de}");
    // sorted by (scheme, x)
    let mut sorted = rows
        .iter()
        .map(|r| (r.scheme.clone(), r.x))
        .collect::<Vec<_>>();
    sorted.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    assert!(rows
        .iter()
        .map(|r| (r.scheme.clone(), r.x))
        .eq(sorted.into_iter()));
}

#[test]
fn negative_power_exits_2_and_names_the_key() {
    let out = run(&["gaussian-sweep", "--p-y", "-0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("P_Y"), "stderr: {}", stderr(&out));
}

#[test]
fn unknown_config_key_exits_2_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"eps": 0.1, "zita": 0.1}"#).unwrap();
    let out = run(&["binary-sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("zita"), "stderr: {}", stderr(&out));
}

#[test]
fn flags_override_file_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(
        &path,
        r#"{"beta_start": 0.3, "beta_stop": 0.3, "beta_step": 0.01, "schemes": "analog", "eps": 0.25}"#,
    )
    .unwrap();
    // eps flag overrides the file's 0.25
    let out = run(&[
        "binary-sweep",
        "--config",
        path.to_str().unwrap(),
        "--eps",
        "0.1",
    ]);
    assert!(out.status.success());
    let rows = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 1);
    let analog = binary::analog_equivocation(&BinarySetup::new(0.3, 0.1, 0.1).unwrap()).unwrap();
    assert!((rows[0].delta - analog).abs() < 1e-9);
}

#[test]
fn binary_defaults_accept_reference_scenario() {
    let out = run(&[
        "binary-sweep",
        "--beta-start",
        "0.3",
        "--beta-stop",
        "0.3",
        "--beta-step",
        "1",
        "--schemes",
        "digital,hybrid",
    ]);
    assert!(out.status.success());
    let rows = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!((row.delta - 0.469).abs() < 2e-3, "{row:?}");
        assert!(row.feasible);
    }
}

#[test]
fn unknown_scheme_exits_2() {
    let out = run(&["binary-sweep", "--schemes", "triangular"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("triangular"));
}

#[test]
fn sweep_outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "binary-sweep",
            "--beta-start",
            "0.5",
            "--beta-stop",
            "0.7",
            "--beta-step",
            "0.1",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "two identical runs must write identical bytes"
    );
}

#[test]
fn simulate_outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "simulate",
            "--n",
            "32",
            "--trials",
            "64",
            "--seed",
            "9",
            "--beta",
            "0.3",
            "--u",
            "0.1",
            "--r1",
            "0.1",
            "--r2",
            "0.05",
            "--rf",
            "0.05",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn simulate_zero_trials_writes_empty_result() {
    let out = run(&["simulate", "--trials", "0", "--n", "16", "--seed", "3"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(json["covering"].is_null());
    assert!(json["bob"].is_null());
    assert!(json["eve"].is_null());
    assert!(json["mean_distortion"].is_null());
    assert_eq!(json["config"]["trials"], 0);
}

#[test]
fn simulate_rejects_oversized_codebooks() {
    let out = run(&[
        "simulate", "--n", "64", "--r1", "0.3", "--r2", "0.3", "--trials", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cap"));
}

#[test]
fn classify_binary_and_gaussian() {
    let out = run(&["classify", "--beta", "0.4", "--eps", "0.1"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["class"], "b_more_capable_than_e");

    let out = run(&["classify", "--p-y", "2.0", "--p-z", "1.0"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["separation"], "separation_optimal");

    let out = run(&["classify"]);
    assert_eq!(out.status.code(), Some(2));
}

/// Every CSV row must re-evaluate, through the library and the row's own
/// parameters, to the Δ it reports.
#[test]
fn csv_rows_round_trip_through_the_library() {
    let gauss = run(&[
        "gaussian-sweep",
        "--d-start",
        "0.35",
        "--d-stop",
        "0.95",
        "--d-step",
        "0.15",
    ]);
    assert!(gauss.status.success());
    let setup = GaussianSetup::new(1.0, 0.5, 1.0, 1.0, None).unwrap();
    for row in parse_csv(&stdout(&gauss)) {
        let de = match row.scheme.as_str() {
            "optimal" => gaussian::optimal_boundary_de(row.x, &setup).unwrap(),
            "digital" => gaussian::digital_de(row.x, row.params["mu"], &setup).unwrap(),
            "analog" => gaussian::analog_de(row.x, &setup).unwrap(),
            "timeshare" => gaussian::time_sharing_de(row.x, &setup).unwrap(),
            other => panic!("unexpected scheme {other}"),
        };
        let delta = gaussian::de_to_equivocation(de).unwrap();
        assert!(
            (delta - row.delta).abs() <= 1e-9,
            "{}@{}: {delta} vs {}",
            row.scheme,
            row.x,
            row.delta
        );
    }

    let binary_out = run(&[
        "binary-sweep",
        "--beta-start",
        "0.55",
        "--beta-stop",
        "0.85",
        "--beta-step",
        "0.15",
    ]);
    assert!(binary_out.status.success());
    for row in parse_csv(&stdout(&binary_out)) {
        let setup = BinarySetup::new(row.x, 0.1, 0.1).unwrap();
        let delta = match row.scheme.as_str() {
            "digital" => {
                let aux = AuxParams::new(row.params["u"], row.params["q"]).unwrap();
                binary::digital_equivocation(&setup, &aux).unwrap().delta
            }
            "hybrid" => {
                binary::hybrid_equivocation(&setup, row.params["u"])
                    .unwrap()
                    .delta
            }
            "outer" => {
                let aux = AuxParams::new(row.params["u"], row.params["q"]).unwrap();
                binary::outer_bound_equivocation(&setup, &aux)
                    .unwrap()
                    .delta
            }
            "analog" => binary::analog_equivocation(&setup).unwrap(),
            other => panic!("unexpected scheme {other}"),
        };
        assert!(
            (delta - row.delta).abs() <= 1e-9,
            "{}@{}: {delta} vs {}",
            row.scheme,
            row.x,
            row.delta
        );
    }
}

#[test]
fn config_file_can_supply_everything() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.json");
    let out_path = dir.path().join("result.json");
    std::fs::write(
        &path,
        format!(
            r#"{{"n": 32, "r1": 0.1, "r2": 0.05, "rf": 0.05, "trials": 16, "seed": 5,
                "beta": 0.3, "eps": 0.1, "zeta": 0.1, "u": 0.1, "out": {:?}}}"#,
            out_path.to_str().unwrap()
        ),
    )
    .unwrap();
    let out = run(&["simulate", "--config", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(json["config"]["n"], 32);
    assert_eq!(json["config"]["seed"], 5);
}
