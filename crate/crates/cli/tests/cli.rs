use std::process::{Command, Output};

use pcclone_cli::{probe_phases, RunConfig, SimulationOutput, SweepRow};

fn pcclone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcclone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn simulate_three_clones_json() {
    let out = pcclone(&["simulate", "--M", "3", "--plane", "XZ", "--phase", "0.4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: SimulationOutput = serde_json::from_str(&stdout(&out)).unwrap();
    let r = &parsed.report;
    assert_eq!((r.m, r.p), (3, 2));
    for f in &r.per_clone_fidelity {
        assert!((f - 5.0 / 6.0).abs() < 1e-10);
    }
    assert!((r.success_prob - 8.0 / 9.0).abs() < 1e-12);
    assert!(parsed.covariance_defect < 1e-10);
}

#[test]
fn json_round_trips_exactly() {
    let out = pcclone(&["simulate", "--P", "2", "--scheme", "B", "--phase", "-2.25", "--format", "json", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed: SimulationOutput = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, text);
    let back: SimulationOutput = serde_json::from_str(&again).unwrap();
    assert_eq!(back, parsed);
    let config: RunConfig = serde_json::from_value(serde_json::to_value(&parsed.config).unwrap()).unwrap();
    assert_eq!(config.seed, Some(11));
}

#[test]
fn simulate_five_clones_csv() {
    let out = pcclone(&["simulate", "--M", "5", "--scheme", "B", "--plane", "yz", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let tail: Vec<&str> = header.iter().skip(header.len() - 5).collect();
    assert_eq!(tail, ["fid_1", "fid_2", "fid_3", "fid_4", "fid_5"]);
    let row = reader.records().next().unwrap().unwrap();
    for i in header.len() - 5..header.len() {
        let f: f64 = row[i].parse().unwrap();
        assert!((f - 0.8).abs() < 1e-10);
    }
    assert!(row[5].contains('e'));
}

#[test]
fn even_m_is_a_config_error() {
    let out = pcclone(&["simulate", "--M", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("M must be odd"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn other_config_errors() {
    for args in [
        &["simulate", "--M", "3", "--plane", "ab"][..],
        &["simulate", "--M", "3", "--P", "3"],
        &["simulate", "--M", "1"],
        &["simulate"],
        &["fidelity-sweep", "--max-m", "1"],
        &["verify", "--suite", "nope"],
        &["opa", "--order", "0"],
        &["simulate", "--M", "3", "--format", "xml"],
        &["verify", "--tolerance", "-1"],
    ] {
        assert_eq!(pcclone(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn fidelity_sweep_rows() {
    let out = pcclone(&["fidelity-sweep", "--max-m", "5", "--exact", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<SweepRow> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0].m, rows[0].gamma.as_str(), rows[0].equal), (3, "5/6", true));
    assert_eq!((rows[1].m, rows[1].gamma.as_str(), rows[1].equal), (5, "4/5", true));
    let out = pcclone(&["fidelity-sweep", "--max-m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1 rows, 0 unequal"));
}

#[test]
fn verify_all_passes_and_strict_tolerance_fails() {
    let out = pcclone(&["verify", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() > 20);
    assert!(!text.contains("FAIL"));
    let strict = pcclone(&["verify", "--suite", "cloner", "--tolerance", "0"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn opa_reports_first_order_ratio() {
    let out = pcclone(&["opa", "--phase", "0", "--gain", "0.1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["ratio_abs"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
    assert!((v["reduced_fidelity"].as_f64().unwrap() - 5.0 / 6.0).abs() < 1e-9);
    let idle = pcclone(&["opa", "--phase", "1.1", "--gain", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&idle)).unwrap();
    assert!(v["input_change"].as_f64().unwrap() < 1e-14);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = pcclone(&["fidelity-sweep", "--max-m", "7", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&out));
}

#[test]
fn seeded_probes_are_reproducible() {
    assert_eq!(probe_phases(Some(3)), probe_phases(Some(3)));
    assert_ne!(probe_phases(Some(3)), probe_phases(Some(4)));
    assert!(probe_phases(Some(9)).iter().all(|x| (0.0..2.0 * std::f64::consts::PI).contains(x)));
    let a = pcclone(&["simulate", "--M", "3", "--seed", "5", "--format", "csv"]);
    let b = pcclone(&["simulate", "--M", "3", "--seed", "5", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}
