//! End-to-end runs of the certificate binary: exit codes, envelope shape,
//! and the headline numbers in each report.

use std::process::{Command, Output};

use stabdisc::six_state_set;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabdisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with `--format json` appended and parses the envelope.
fn run_json(args: &[&str]) -> (Output, serde_json::Value) {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let envelope: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad envelope ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (out, envelope)
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("not killed by signal")
}

#[test]
fn theorem1_certifies_the_six_state_set() {
    let (out, env) = run_json(&["theorem1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(env["schema_version"], 1);
    assert_eq!(env["command"], "theorem1");
    assert_eq!(env["passed"], true);
    assert_eq!(env["report"]["measurements"], 63);
    assert_eq!(env["report"]["no_progress"], 63);
    assert!(env["report"]["decision"]["verdict"]["No"].is_object());
}

#[test]
fn theorem2_covers_every_orthogonal_clique() {
    let (out, env) = run_json(&["theorem2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(env["passed"], true);
    let two_qubit = &env["report"]["registers"][1];
    assert_eq!(two_qubit["states"], 60);
    assert_eq!(two_qubit["product_bases"], 15);
    assert_eq!(two_qubit["adaptive_bases"], 90);
    for clique in two_qubit["cliques"].as_array().unwrap() {
        assert_eq!(clique["count"], clique["discriminable"], "clique {clique}");
    }
}

#[test]
fn theorem3_matches_the_case_counts() {
    let (out, env) = run_json(&["theorem3", "--n", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(env["passed"], true);
    let cert = &env["report"]["certificate"];
    assert_eq!(cert["num_paulis"], 4095);
    assert_eq!(cert["x_case"], 4032);
    assert_eq!(cert["z_case"], 63);
    assert_eq!(cert["all_verified"], true);
}

#[test]
fn lemma1_matches_the_case_counts() {
    let (out, env) = run_json(&["lemma1", "--l", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(env["passed"], true);
    let rep = &env["report"];
    assert_eq!(rep["num_paulis"], 255);
    assert_eq!(rep["flipping_cases"], 128);
    assert_eq!(rep["forwarded_cases"], 126);
    assert_eq!(rep["trivial_cases"], 1);
}

#[test]
fn entropy_six_reports_the_third_of_a_bit() {
    let (out, env) = run_json(&["entropy", "--set", "six"]);
    assert_eq!(exit_code(&out), 0);
    let gap = env["report"]["gap_report"]["gap"].as_f64().unwrap();
    assert!((gap - 1.0 / 3.0).abs() < 1e-9, "gap {gap}");
    let fano = env["report"]["fano_bound"].as_f64().unwrap();
    assert!((fano - 0.9602656262283175).abs() < 5e-9, "fano {fano}");
    assert_eq!(
        env["report"]["gap_report"]["maximizers"]
            .as_array()
            .unwrap()
            .len(),
        15
    );
}

#[test]
fn entropy_csv_has_one_row_per_measurement() {
    let out = run(&["entropy", "--set", "six", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 64);
    assert!(text.starts_with("pauli,mutual_information,residual_holevo,total\n"));
}

#[test]
fn circuit_table_matches_the_reference_destinations() {
    let (out, env) = run_json(&["circuit-table"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(env["passed"], true);
    let rows = env["report"]["rows"].as_array().unwrap();
    let got: Vec<u64> = rows
        .iter()
        .map(|r| r["readout_index"].as_u64().unwrap())
        .collect();
    assert_eq!(got, vec![2, 1, 4, 6, 3, 5]);
}

#[test]
fn leave_one_out_is_perfect_for_every_exclusion() {
    let (out, env) = run_json(&["leave-one-out"]);
    assert_eq!(exit_code(&out), 0);
    let cases = env["report"]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 6);
    for case in cases {
        assert_eq!(case["value"], "1");
    }
    // Excluding the last label admits the published three-round protocol:
    // a Z readout on qubit 2 decides which qubit to probe next.
    assert_eq!(cases[5]["strategy"]["measure"], "+IIZ");
    assert_eq!(cases[5]["depth"], 3);
}

#[test]
fn cspo_check_covers_all_pure_inputs() {
    let (out, env) = run_json(&["cspo-check"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(env["passed"], true);
    assert_eq!(env["report"]["num_inputs"], 1080);
    assert_eq!(env["report"]["fixed_inputs"], 6);
    assert_eq!(env["report"]["all_outputs_stabilizer"], true);
}

#[test]
fn data_hiding_ratios_sit_in_their_windows() {
    let (out, env) = run_json(&["data-hiding"]);
    assert_eq!(exit_code(&out), 0);
    let pairs = env["report"]["pairs"].as_array().unwrap();
    let mixed = pairs[0]["advantage_ratio"].as_f64().unwrap();
    let hiding = pairs[1]["advantage_ratio"].as_f64().unwrap();
    assert!((mixed - 1.129).abs() < 2e-3, "mixed ratio {mixed}");
    assert!((hiding - 1.06987).abs() < 1e-3, "hiding ratio {hiding}");
}

#[test]
fn data_hiding_reports_failure_under_an_absurd_window() {
    let (out, env) = run_json(&["data-hiding", "--tolerance", "1e-12"]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(env["passed"], false);
    assert!(!env["failures"].as_array().unwrap().is_empty());
}

#[test]
fn search_decides_a_bell_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.json");
    std::fs::write(
        &path,
        r#"{"n":2,"states":[
            {"label":0,"prior":"1/2","components":[{"weight":"1","state":{"n":2,"generators":["+XX","+ZZ"]}}]},
            {"label":1,"prior":"1/2","components":[{"weight":"1","state":{"n":2,"generators":["+XX","-ZZ"]}}]}]}"#,
    )
    .unwrap();
    let (out, env) = run_json(&["search", "--set", path.to_str().unwrap(), "--depth", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(env["passed"], true);
    assert!(env["report"]["verdict"]["Yes"].is_object());
    assert_eq!(env["report"]["best_value"], "1");
}

#[test]
fn search_rejects_the_six_state_set_and_keeps_the_sandwich() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("six.json");
    std::fs::write(&path, serde_json::to_string(&six_state_set()).unwrap()).unwrap();
    let (out, env) = run_json(&["search", "--set", path.to_str().unwrap(), "--depth", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert!(env["report"]["verdict"]["No"].is_object());
    let lower = env["report"]["best_value_float"].as_f64().unwrap();
    let upper = env["report"]["fano_bound"].as_f64().unwrap();
    assert!(
        lower <= upper + 1e-8,
        "sandwich violated: {lower} > {upper}"
    );
}

#[test]
fn search_needs_a_readable_instance() {
    let out = run(&["search", "--set", "/nonexistent/set.json"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn protocol_exact_mode_reproduces_the_reference_tail() {
    let (out, env) = run_json(&["protocol", "--N", "1000", "--succ", "980", "--p0", "0.9603"]);
    assert_eq!(exit_code(&out), 0);
    let rep = &env["report"];
    assert_eq!(rep["N"], 1000);
    assert_eq!(rep["N_succ"], 980);
    let p_value = rep["p_value"].as_f64().unwrap();
    assert!(
        (p_value - 3.491479682070399e-4).abs() < 1e-12,
        "p {p_value}"
    );
    let sigma = rep["sigma_equiv"].as_f64().unwrap();
    assert!((sigma - 3.3902473245846189).abs() < 1e-9, "sigma {sigma}");
    assert!(rep["seed"].is_null() && rep["generator"].is_null());
}

#[test]
fn protocol_simulation_is_reproducible_and_unrestricted_wins() {
    let args = [
        "protocol",
        "--simulate",
        "--prover",
        "full",
        "--N",
        "100",
        "--seed",
        "5",
    ];
    let (out1, env1) = run_json(&args);
    let (out2, _) = run_json(&args);
    assert_eq!(exit_code(&out1), 0);
    assert_eq!(out1.stdout, out2.stdout);
    assert_eq!(env1["report"]["N_succ"], 100);
    assert_eq!(env1["report"]["success_rate"], 1.0);
}

#[test]
fn protocol_modes_validate_their_flags() {
    assert_eq!(exit_code(&run(&["protocol", "--N", "10"])), 2);
    assert_eq!(exit_code(&run(&["protocol", "--N", "10", "--simulate"])), 2);
}

#[test]
fn output_directory_variable_is_the_fallback_destination() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_stabdisc"))
        .args(["circuit-table", "--format", "json"])
        .env("STABDISC_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let written = std::fs::read_to_string(dir.path().join("circuit-table.json")).unwrap();
    let env: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(env["passed"], true);
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn explicit_output_path_beats_the_directory_variable() {
    let dir = tempfile::tempdir().unwrap();
    let custom = dir.path().join("custom.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_stabdisc"))
        .args(["circuit-table", "--output"])
        .arg(&custom)
        .env("STABDISC_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    assert!(custom.exists());
    assert!(!dir.path().join("circuit-table.txt").exists());
}

#[test]
fn csv_is_a_usage_error_where_no_table_exists() {
    let out = run(&["theorem1", "--format", "csv"]);
    assert_eq!(exit_code(&out), 2);
}
