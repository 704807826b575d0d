//! `kscheck` — command-line front end for the exact contradiction verifier.
//!
//! Two subcommands:
//!
//! * `verify` derives parity constraints, re-verifies every algebraic
//!   identity the verdict rests on, runs the parity counting argument and
//!   (unless skipped) the exhaustive enumeration, and prints a report.
//! * `derive` stops after constraint extraction and prints what was derived.
//!
//! Scenarios come from `--builtin` (the square and its singlet-state variant)
//! or `--file` (a JSON description, schema documented in the scenario file
//! module and in the README).
//!
//! Exit codes: 0 — everything verified (and the verdict matched `--expect`
//! if given); 1 — a verification mismatch (a failed identity or an `--expect`
//! the verdict did not match); 2 — bad input (unreadable or malformed file,
//! semantic errors, flags that do not apply, or more projectors than the
//! enumerator accepts).

use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kscheck_core::checks::{
    mermin_sum_rule_checks, scenario_checks, singlet_checks, square_checks,
};
use kscheck_core::{
    check_sign_assignment, criticality_scan, exhaustive_search, multiplicative_search,
    parity_argument, Check, MagicSquare, Scenario, Verdict,
};

use kscheck::report::{
    constraint_entries, derive_text, line_entries, scenario_summary, verify_text, CriticalityEntry,
    DeriveReport, MultiplicativeSection, VerifyReport, REPORT_SCHEMA_VERSION, SIGN_VALUE_ENCODING,
};
use kscheck::scenario_file::{ingest, ScenarioFile, SkippedContext};

#[derive(Parser)]
#[command(
    name = "kscheck",
    version,
    about = "Exact verifier for parity contradictions in quantum value assignments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive constraints, re-verify the algebra, and prove (un)satisfiability
    Verify {
        #[command(flatten)]
        source: Source,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Skip the exhaustive enumeration (the parity argument still runs)
        #[arg(long)]
        skip_enumeration: bool,
        /// Also search sign assignments against the square's line products
        /// (built-in scenarios only)
        #[arg(long)]
        multiplicative: bool,
        /// Re-run the enumeration once per constraint with that constraint
        /// dropped, to show whether each one is essential
        #[arg(long)]
        criticality: bool,
        /// Exit 1 unless the final verdict matches (UNKNOWN matches nothing)
        #[arg(long, value_enum)]
        expect: Option<Expected>,
    },
    /// Derive and print the parity constraints without searching
    Derive {
        #[command(flatten)]
        source: Source,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in scenario
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
    /// JSON scenario file
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    /// The 3x3 square of two-qubit observables; unsatisfiable with no state
    MerminPeres,
    /// Six observables whose constraints come from the singlet state
    Singlet,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expected {
    Sat,
    Unsat,
}

struct Loaded {
    scenario: Scenario,
    /// The defining square, when the scenario has one (built-ins only).
    square: Option<MagicSquare>,
    /// Structural checks plus any scenario-specific identity checks.
    identities: Vec<Check>,
    skipped: Vec<SkippedContext>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    process::exit(code);
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Verify {
            source,
            format,
            skip_enumeration,
            multiplicative,
            criticality,
            expect,
        } => run_verify(&source, format, skip_enumeration, multiplicative, criticality, expect),
        Command::Derive { source, format } => run_derive(&source, format),
    }
}

/// Writes a report to stdout. A closed pipe downstream (`| head`, a pager
/// quit early) silently truncates the report instead of aborting: the
/// consumer chose to stop reading, and the exit code still carries the
/// verdict.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn load(source: &Source) -> Result<Loaded, String> {
    match (source.builtin, &source.file) {
        (Some(Builtin::MerminPeres), None) => {
            let scenario = Scenario::mermin_peres();
            let square = MagicSquare::mermin();
            let mut identities = scenario_checks(&scenario);
            identities.extend(square_checks(&square));
            identities.extend(mermin_sum_rule_checks(&square));
            Ok(Loaded { scenario, square: Some(square), identities, skipped: Vec::new() })
        }
        (Some(Builtin::Singlet), None) => {
            let scenario = Scenario::singlet();
            let square = MagicSquare::mermin();
            let mut identities = scenario_checks(&scenario);
            identities.extend(square_checks(&square));
            identities.extend(singlet_checks());
            Ok(Loaded { scenario, square: Some(square), identities, skipped: Vec::new() })
        }
        (None, Some(path)) => {
            let (scenario, skipped) = load_file(path)?;
            let identities = scenario_checks(&scenario);
            Ok(Loaded { scenario, square: None, identities, skipped })
        }
        // clap's argument group guarantees exactly one source.
        _ => unreachable!("source group requires exactly one of --builtin/--file"),
    }
}

fn load_file(path: &Path) -> Result<(Scenario, Vec<SkippedContext>), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    // serde_json's Display already appends "at line L column C".
    let file: ScenarioFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let fallback = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    let ingested = ingest(&file, fallback).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((ingested.scenario, ingested.skipped))
}

fn run_verify(
    source: &Source,
    format: Format,
    skip_enumeration: bool,
    multiplicative: bool,
    criticality: bool,
    expect: Option<Expected>,
) -> Result<i32, String> {
    let Loaded { scenario, square, mut identities, skipped } = load(source)?;

    if multiplicative && square.is_none() {
        return Err(
            "--multiplicative applies only to scenarios defined by a square of observables; \
             file scenarios carry none (use --builtin mermin-peres or --builtin singlet)"
                .to_string(),
        );
    }

    let parity_proof = parity_argument(&scenario);

    let enumeration = if skip_enumeration {
        None
    } else {
        Some(exhaustive_search(&scenario).map_err(|e| e.to_string())?)
    };

    // Cross-checks: anything one prover claims must survive independent
    // re-verification before it reaches the report.
    if let Some(cert) = &enumeration {
        if let Some(witness) = &cert.witness {
            identities.push(Check {
                name: "enumeration witness satisfies every constraint on re-check".to_string(),
                passed: scenario.is_satisfied_by(witness),
            });
        }
        if let Some(sample) = &cert.violated_example {
            identities.push(Check {
                name: "recorded violation sample breaks the constraint it names".to_string(),
                passed: !scenario.constraints()[sample.constraint_index]
                    .is_satisfied_by(&sample.assignment),
            });
        }
        if parity_proof.conclusive {
            identities.push(Check {
                name: "parity argument and enumeration agree the scenario is unsatisfiable"
                    .to_string(),
                passed: cert.verdict == Verdict::Unsat,
            });
        }
    }

    let multiplicative = if multiplicative {
        let square = square.as_ref().expect("checked above");
        let certificate = multiplicative_search(square);
        if let Some(witness) = &certificate.witness {
            identities.push(Check {
                name: "sign-assignment witness reproduces every line product on re-check"
                    .to_string(),
                passed: check_sign_assignment(square, witness),
            });
        }
        Some(MultiplicativeSection {
            value_encoding: SIGN_VALUE_ENCODING,
            lines: line_entries(square),
            certificate,
        })
    } else {
        None
    };

    let criticality = if criticality {
        let scan = criticality_scan(&scenario).map_err(|e| e.to_string())?;
        Some(
            scan.into_iter()
                .map(|(dropped_constraint, certificate)| CriticalityEntry {
                    dropped_constraint,
                    certificate,
                })
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };

    let verdict = match &enumeration {
        Some(cert) => match cert.verdict {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
        },
        None if parity_proof.conclusive => "UNSAT",
        None => "UNKNOWN",
    };

    let identities_ok = identities.iter().all(|c| c.passed);
    let expectation_ok = match expect {
        None => true,
        Some(Expected::Sat) => verdict == "SAT",
        Some(Expected::Unsat) => verdict == "UNSAT",
    };
    let exit_status = if identities_ok && expectation_ok { 0 } else { 1 };

    let report = VerifyReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "verify",
        scenario: scenario_summary(&scenario),
        identities,
        constraints: constraint_entries(&scenario),
        skipped_contexts: skipped,
        parity_proof,
        enumeration,
        multiplicative,
        criticality,
        verdict,
        exit_status,
    };

    match format {
        Format::Json => emit(&format!(
            "{}\n",
            serde_json::to_string_pretty(&report).expect("report serializes")
        )),
        Format::Text => emit(&verify_text(&report)),
    }
    if !identities_ok {
        eprintln!("error: an identity check failed; see the report");
    }
    if !expectation_ok {
        eprintln!(
            "error: expected verdict {} but got {verdict}",
            match expect {
                Some(Expected::Sat) => "SAT",
                Some(Expected::Unsat) => "UNSAT",
                None => unreachable!(),
            }
        );
    }
    Ok(exit_status)
}

fn run_derive(source: &Source, format: Format) -> Result<i32, String> {
    let Loaded { scenario, skipped, .. } = load(source)?;
    let report = DeriveReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "derive",
        scenario: scenario_summary(&scenario),
        constraints: constraint_entries(&scenario),
        skipped_contexts: skipped,
    };
    match format {
        Format::Json => emit(&format!(
            "{}\n",
            serde_json::to_string_pretty(&report).expect("report serializes")
        )),
        Format::Text => emit(&derive_text(&report)),
    }
    Ok(0)
}
