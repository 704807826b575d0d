//! End-to-end tests of the `kscheck` binary: exit codes, report structure,
//! file ingestion, the malformed-file corpus, and the report round-trip
//! guarantee.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use kscheck::scenario_file::{export, ingest, ScenarioFile};
use kscheck_core::Scenario;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kscheck")).args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one json document")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("process not killed by a signal")
}

fn fixture(relative: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(relative)
}

fn fixture_str(relative: &str) -> String {
    fixture(relative).to_str().expect("utf-8 path").to_string()
}

#[test]
fn verify_square_builtin_text_report() {
    let out = run(&["verify", "--builtin", "mermin-peres"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("verdict: UNSAT"));
    assert!(text.contains("0 of 512 assignments"));
    assert!(text.contains("conclusive: yes"));
    assert!(stderr_of(&out).is_empty());
}

#[test]
fn verify_singlet_builtin_json_schema() {
    let out = run(&["verify", "--builtin", "singlet", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["scenario"]["projector_count"], 6);
    assert_eq!(v["scenario"]["has_state"], true);
    assert_eq!(v["constraints"].as_array().unwrap().len(), 5);
    assert_eq!(v["parity_proof"]["conclusive"], true);
    assert_eq!(v["enumeration"]["assignments_checked"], 64);
    assert_eq!(v["enumeration"]["satisfying_count"], 0);
    assert_eq!(v["enumeration"]["verdict"], "UNSAT");
    assert_eq!(v["verdict"], "UNSAT");
    assert_eq!(v["exit_status"], 0);
}

#[test]
fn expectation_flag_drives_exit_code() {
    let ok = run(&["verify", "--builtin", "mermin-peres", "--expect", "unsat"]);
    assert_eq!(code_of(&ok), 0);

    let bad = run(&["verify", "--builtin", "mermin-peres", "--expect", "sat"]);
    assert_eq!(code_of(&bad), 1);
    assert!(stderr_of(&bad).contains("expected verdict SAT"));
    // The report still prints: the run completed, only the expectation failed.
    let v = json_of(&run(&[
        "verify",
        "--builtin",
        "mermin-peres",
        "--expect",
        "sat",
        "--format",
        "json",
    ]));
    assert_eq!(v["exit_status"], 1);
    assert_eq!(v["verdict"], "UNSAT");
}

#[test]
fn skipping_enumeration_still_concludes_via_parity() {
    let out = run(&["verify", "--builtin", "singlet", "--skip-enumeration", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["enumeration"], Value::Null);
    assert_eq!(v["parity_proof"]["conclusive"], true);
    assert_eq!(v["verdict"], "UNSAT");
}

#[test]
fn inconclusive_without_enumeration_is_unknown_and_matches_no_expectation() {
    let path = fixture_str("scenarios/trivial.json");
    let out = run(&["verify", "--file", &path, "--skip-enumeration", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "UNKNOWN");

    for expectation in ["sat", "unsat"] {
        let out = run(&["verify", "--file", &path, "--skip-enumeration", "--expect", expectation]);
        assert_eq!(code_of(&out), 1, "UNKNOWN must not match --expect {expectation}");
    }
}

#[test]
fn derive_reports_builtin_constraint_tables() {
    let v = json_of(&run(&["derive", "--builtin", "mermin-peres", "--format", "json"]));
    assert_eq!(v["command"], "derive");
    let sums: Vec<Vec<u64>> = v["constraints"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["allowed_sums"].as_array().unwrap().iter().map(|s| s.as_u64().unwrap()).collect()
        })
        .collect();
    assert_eq!(sums, vec![vec![0, 2], vec![0, 2], vec![0, 2], vec![0, 2], vec![0, 2], vec![1, 3],]);
    assert!(v["constraints"].as_array().unwrap().iter().all(|c| c["origin"] == "spectral"));

    let v = json_of(&run(&["derive", "--builtin", "singlet", "--format", "json"]));
    let table: Vec<(Vec<u64>, String)> = v["constraints"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["allowed_sums"].as_array().unwrap().iter().map(|s| s.as_u64().unwrap()).collect(),
                c["origin"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        table,
        vec![
            (vec![0, 2], "spectral".to_string()),
            (vec![0, 2], "spectral".to_string()),
            (vec![1], "state-eigenvector".to_string()),
            (vec![1], "state-eigenvector".to_string()),
            (vec![1], "state-eigenvector".to_string()),
        ]
    );
}

#[test]
fn single_projector_context_is_skipped_and_scenario_stays_satisfiable() {
    let path = fixture_str("scenarios/trivial.json");
    let out = run(&["verify", "--file", &path, "--format", "json"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let v = json_of(&out);
    assert_eq!(v["constraints"].as_array().unwrap().len(), 0);
    let skipped = v["skipped_contexts"].as_array().unwrap();
    assert_eq!(skipped.len(), 1);
    assert!(skipped[0]["reason"].as_str().unwrap().contains("mixed parity"));
    assert_eq!(v["enumeration"]["verdict"], "SAT");
    assert_eq!(v["enumeration"]["satisfying_count"], 2);
    assert_eq!(v["enumeration"]["assignments_checked"], 2);
    assert_eq!(v["verdict"], "SAT");
}

#[test]
fn opposite_signed_pair_derives_an_odd_constraint() {
    let path = fixture_str("scenarios/complement_pair.json");
    let v = json_of(&run(&["derive", "--file", &path, "--format", "json"]));
    let constraints = v["constraints"].as_array().unwrap();
    assert_eq!(constraints.len(), 1);
    assert_eq!(constraints[0]["members"], serde_json::json!(["A", "B"]));
    assert_eq!(constraints[0]["allowed_sums"], serde_json::json!([1]));
    assert_eq!(constraints[0]["origin"], "spectral");
    assert_eq!(constraints[0]["parity"], "odd");
}

/// A hand-written file mirroring each built-in must produce the same report
/// apart from the identity-check list (built-ins re-verify extra identities
/// that a generic file cannot claim).
#[test]
fn file_scenarios_reproduce_builtin_reports() {
    for (file, builtin) in
        [("scenarios/mermin_peres.json", "mermin-peres"), ("scenarios/singlet.json", "singlet")]
    {
        let path = fixture_str(file);
        let from_file = run(&["verify", "--file", &path, "--format", "json"]);
        let from_builtin = run(&["verify", "--builtin", builtin, "--format", "json"]);
        assert_eq!(code_of(&from_file), 0, "stderr: {}", stderr_of(&from_file));
        assert_eq!(code_of(&from_builtin), 0);
        let mut a = json_of(&from_file);
        let mut b = json_of(&from_builtin);
        let a_checks = a.as_object_mut().unwrap().remove("identities").unwrap();
        let b_checks = b.as_object_mut().unwrap().remove("identities").unwrap();
        assert_eq!(a, b, "{builtin}: file and builtin reports diverge beyond identities");
        let all_pass =
            |checks: &Value| checks.as_array().unwrap().iter().all(|c| c["passed"] == true);
        assert!(all_pass(&a_checks) && all_pass(&b_checks));
    }
}

#[test]
fn malformed_corpus_exits_2_with_located_diagnostics() {
    let dir = fixture("corpus");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).expect("corpus directory exists") {
        let path = entry.expect("dir entry").path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        seen += 1;
        let out = run(&["verify", "--file", path.to_str().unwrap()]);
        let name = path.file_name().unwrap().to_str().unwrap();
        assert_eq!(code_of(&out), 2, "{name} should be rejected as an input error");
        assert!(out.stdout.is_empty(), "{name} should print no report");
        let err = stderr_of(&out);
        assert!(
            err.contains(name),
            "{name}: diagnostic should locate the offending file, got: {err}"
        );
    }
    assert!(seen >= 15, "corpus unexpectedly small: {seen} files");
}

#[test]
fn non_commuting_context_diagnostic_names_the_pair() {
    let path = fixture_str("corpus/non_commuting_context.json");
    let out = run(&["derive", "--file", &path]);
    assert_eq!(code_of(&out), 2);
    let err = stderr_of(&out);
    assert!(err.contains("context 0"), "got: {err}");
    assert!(err.contains('A') && err.contains('B'), "got: {err}");
}

#[test]
fn multiplicative_flag_needs_a_square() {
    let path = fixture_str("scenarios/trivial.json");
    let out = run(&["verify", "--file", &path, "--multiplicative"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("--multiplicative"));
}

#[test]
fn multiplicative_section_reports_line_rules_and_their_unsatisfiability() {
    let out = run(&["verify", "--builtin", "mermin-peres", "--multiplicative", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    let m = &v["multiplicative"];
    let lines = m["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 6);
    let signs: Vec<&str> = lines.iter().map(|l| l["sign"].as_str().unwrap()).collect();
    assert_eq!(signs, ["plus", "plus", "plus", "plus", "plus", "minus"]);
    assert_eq!(m["certificate"]["assignments_checked"], 512);
    assert_eq!(m["certificate"]["satisfying_count"], 0);
    assert_eq!(m["certificate"]["verdict"], "UNSAT");
}

#[test]
fn criticality_scan_shows_every_constraint_is_essential() {
    for (builtin, expected_entries) in [("mermin-peres", 6), ("singlet", 5)] {
        let out = run(&["verify", "--builtin", builtin, "--criticality", "--format", "json"]);
        assert_eq!(code_of(&out), 0);
        let v = json_of(&out);
        let entries = v["criticality"].as_array().unwrap();
        assert_eq!(entries.len(), expected_entries);
        for (i, entry) in entries.iter().enumerate() {
            assert_eq!(entry["dropped_constraint"], i as u64);
            assert_eq!(
                entry["certificate"]["verdict"], "SAT",
                "{builtin}: dropping constraint {i} should leave a satisfiable rest"
            );
        }
    }
}

/// Serializing a scenario to a file and re-ingesting it must reproduce the
/// same report, byte for byte.
#[test]
fn reports_round_trip_byte_identically_through_the_file_format() {
    let dir = tempfile::tempdir().expect("temp dir");
    for scenario in [Scenario::mermin_peres(), Scenario::singlet()] {
        let name = scenario.name().to_string();

        let first = export(&scenario).expect("built-ins are exportable");
        let first_path = dir.path().join(format!("{name}-1.json"));
        fs::write(&first_path, serde_json::to_string_pretty(&first).unwrap()).unwrap();

        let text = fs::read_to_string(&first_path).unwrap();
        let parsed: ScenarioFile = serde_json::from_str(&text).unwrap();
        let reingested = ingest(&parsed, "unused-fallback").expect("round trip ingests");
        let second = export(&reingested.scenario).expect("re-export succeeds");
        let second_path = dir.path().join(format!("{name}-2.json"));
        fs::write(&second_path, serde_json::to_string_pretty(&second).unwrap()).unwrap();

        for command in ["verify", "derive"] {
            let a = run(&[command, "--file", first_path.to_str().unwrap(), "--format", "json"]);
            let b = run(&[command, "--file", second_path.to_str().unwrap(), "--format", "json"]);
            assert_eq!(code_of(&a), 0, "stderr: {}", stderr_of(&a));
            assert_eq!(code_of(&b), 0);
            assert_eq!(
                a.stdout, b.stdout,
                "{name}/{command}: reports must round-trip byte-identically"
            );
        }
    }
}

#[test]
fn text_and_json_formats_agree_on_the_verdict() {
    for builtin in ["mermin-peres", "singlet"] {
        let text = stdout_of(&run(&["verify", "--builtin", builtin]));
        let v = json_of(&run(&["verify", "--builtin", builtin, "--format", "json"]));
        let verdict = v["verdict"].as_str().unwrap();
        assert!(text.contains(&format!("verdict: {verdict}")));
    }
}
