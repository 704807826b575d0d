//! The on-disk scenario format and its conversion into a validated
//! [`Scenario`].
//!
//! A scenario file is JSON with integer-only numerics (no floats anywhere):
//!
//! ```json
//! {
//!   "name": "complement-pair",
//!   "qubits": 2,
//!   "observables": [
//!     { "id": "A", "pauli": "ZZ" },
//!     { "id": "B", "pauli": "-ZZ" }
//!   ],
//!   "contexts": [["A", "B"]],
//!   "state": [[0, 1, 0, 1], [1, 1, 0, 1], [-1, 1, 0, 1], [0, 1, 0, 1]],
//!   "state_contexts": [["A"]]
//! }
//! ```
//!
//! `contexts` become spectral constraints; `state_contexts` become
//! state-eigenvector constraints against `state`, whose entries are
//! `[re_num, re_den, im_num, im_den]` quadruples of exact integers. Allowed
//! sums are always derived from the operator algebra — the file cannot
//! override them. A context whose projector sum has mixed parity yields no
//! constraint; it is reported rather than treated as an error.

use serde::{Deserialize, Serialize};

use kscheck_core::constraints::{extract_constraint, state_constraint};
use kscheck_core::pauli::PauliParseError;
use kscheck_core::scalar;
use kscheck_core::{ConstraintError, Observable, Projector, Scenario, ScenarioError, Vector};

/// Largest accepted particle count: dimensions beyond 2^8 make dense exact
/// algebra pointlessly slow, and every interesting scenario is far smaller.
pub const MAX_QUBITS: u32 = 8;

/// Serialized scenario. Unknown fields are rejected so that typos fail
/// loudly instead of silently changing meaning.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub qubits: u32,
    pub observables: Vec<ObservableDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contexts: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[i64; 4]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub state_contexts: Vec<Vec<String>>,
}

/// One declared observable: a signed Pauli string under a user-chosen id.
/// The id doubles as the projector label in constraints and certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableDecl {
    pub id: String,
    pub pauli: String,
}

/// A context that was read and understood but yielded no constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedContext {
    pub context_index: usize,
    pub members: Vec<String>,
    pub reason: String,
}

/// Result of a successful ingestion.
#[derive(Debug)]
pub struct Ingested {
    pub scenario: Scenario,
    pub skipped: Vec<SkippedContext>,
}

/// Why a scenario file was rejected. All of these exit with status 2.
#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("qubits must be between 1 and {max}, got {qubits}")]
    QubitsOutOfRange { qubits: u32, max: u32 },
    #[error("duplicate observable id {id:?}")]
    DuplicateObservableId { id: String },
    #[error("observable {id:?}: {source}")]
    BadPauliString { id: String, source: PauliParseError },
    #[error("observable {id:?}: Pauli string {pauli:?} has length {got}, expected {expected}")]
    WrongPauliLength { id: String, pauli: String, expected: usize, got: usize },
    #[error("{context} references unknown observable id {id:?}")]
    UnknownId { context: String, id: String },
    #[error("{context}: {source}")]
    Constraint { context: String, source: ConstraintError },
    #[error("state has {got} entries, expected {expected} (2^qubits)")]
    StateLength { expected: usize, got: usize },
    #[error("state entry {index} has a zero denominator")]
    StateZeroDenominator { index: usize },
    #[error("state is the zero vector")]
    ZeroState,
    #[error("state_contexts require a state")]
    StateContextsWithoutState,
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

/// Validates the file and derives the scenario: projectors from observables,
/// spectral constraints from `contexts`, state constraints from
/// `state_contexts`.
pub fn ingest(file: &ScenarioFile, fallback_name: &str) -> Result<Ingested, IngestError> {
    if file.qubits == 0 || file.qubits > MAX_QUBITS {
        return Err(IngestError::QubitsOutOfRange { qubits: file.qubits, max: MAX_QUBITS });
    }
    let dim = 1usize << file.qubits;

    let mut projectors: Vec<Projector> = Vec::with_capacity(file.observables.len());
    for decl in &file.observables {
        if projectors.iter().any(|p| p.label() == decl.id) {
            return Err(IngestError::DuplicateObservableId { id: decl.id.clone() });
        }
        let string = decl
            .pauli
            .parse()
            .map_err(|source| IngestError::BadPauliString { id: decl.id.clone(), source })?;
        let observable = Observable::new(decl.id.clone(), string);
        if observable.string().num_particles() != file.qubits as usize {
            return Err(IngestError::WrongPauliLength {
                id: decl.id.clone(),
                pauli: decl.pauli.clone(),
                expected: file.qubits as usize,
                got: observable.string().num_particles(),
            });
        }
        projectors.push(Projector::from_observable(decl.id.clone(), observable));
    }

    let resolve = |ids: &[String], context: &str| -> Result<Vec<&Projector>, IngestError> {
        ids.iter()
            .map(|id| {
                projectors.iter().find(|p| p.label() == id).ok_or_else(|| IngestError::UnknownId {
                    context: context.to_string(),
                    id: id.clone(),
                })
            })
            .collect()
    };

    let mut constraints = Vec::new();
    let mut skipped = Vec::new();
    for (index, ids) in file.contexts.iter().enumerate() {
        let context = format!("context {index}");
        let members = resolve(ids, &context)?;
        match extract_constraint(&members) {
            Ok(c) => constraints.push(c),
            Err(err @ ConstraintError::MixedParity { .. }) => skipped.push(SkippedContext {
                context_index: index,
                members: ids.clone(),
                reason: err.to_string(),
            }),
            Err(source) => return Err(IngestError::Constraint { context, source }),
        }
    }

    let state = match &file.state {
        None => None,
        Some(entries) => {
            if entries.len() != dim {
                return Err(IngestError::StateLength { expected: dim, got: entries.len() });
            }
            for (index, &[_, re_den, _, im_den]) in entries.iter().enumerate() {
                if re_den == 0 || im_den == 0 {
                    return Err(IngestError::StateZeroDenominator { index });
                }
            }
            let v = Vector::new(
                entries
                    .iter()
                    .map(|&[rn, rd, im_n, im_d]| scalar::complex(rn, rd, im_n, im_d))
                    .collect(),
            );
            if v.is_zero() {
                return Err(IngestError::ZeroState);
            }
            Some(v)
        }
    };

    if !file.state_contexts.is_empty() && state.is_none() {
        return Err(IngestError::StateContextsWithoutState);
    }
    for (index, ids) in file.state_contexts.iter().enumerate() {
        let context = format!("state context {index}");
        let members = resolve(ids, &context)?;
        let psi = state.as_ref().expect("state presence checked above");
        let constraint = state_constraint(psi, &members)
            .map_err(|source| IngestError::Constraint { context, source })?;
        constraints.push(constraint);
    }

    let name = file.name.clone().unwrap_or_else(|| fallback_name.to_string());
    let scenario = Scenario::new(name, projectors, constraints, state)?;
    Ok(Ingested { scenario, skipped })
}

/// Why a scenario could not be re-serialized in file form.
#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("state entry does not fit in 64-bit integers")]
    StateEntryTooLarge,
    #[error("scenario has no projectors to infer the particle count from")]
    NoProjectors,
}

/// Re-serializes a scenario in file form: spectral constraints become
/// `contexts`, state constraints become `state_contexts`. The file format
/// lists all plain contexts before all state contexts, so constraint order is
/// normalized to spectral-first; scenarios ingested from files (and the
/// built-ins) already follow that order, which makes export → ingest the
/// identity on them. Contexts skipped at ingestion produced no constraint and
/// are not recoverable — export reflects exactly the derived constraint set.
pub fn export(scenario: &Scenario) -> Result<ScenarioFile, ExportError> {
    let dim = scenario.projectors().first().ok_or(ExportError::NoProjectors)?.dim();
    let qubits = dim.trailing_zeros();
    let observables = scenario
        .projectors()
        .iter()
        .map(|p| ObservableDecl {
            id: p.label().to_string(),
            pauli: p.source().string().to_string(),
        })
        .collect();
    let mut contexts = Vec::new();
    let mut state_contexts = Vec::new();
    for c in scenario.constraints() {
        match c.origin() {
            kscheck_core::ConstraintOrigin::Spectral => contexts.push(c.members().to_vec()),
            kscheck_core::ConstraintOrigin::StateEigenvector => {
                state_contexts.push(c.members().to_vec())
            }
        }
    }
    let state = scenario
        .state()
        .map(|psi| {
            psi.entries()
                .iter()
                .map(|z| scalar::gaussian_i64_parts(z).ok_or(ExportError::StateEntryTooLarge))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    Ok(ScenarioFile {
        name: Some(scenario.name().to_string()),
        qubits,
        observables,
        contexts,
        state,
        state_contexts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(extra: &str) -> String {
        format!(r#"{{"qubits": 1, "observables": [{{"id": "A", "pauli": "Z"}}]{extra}}}"#)
    }

    #[test]
    fn parses_and_ingests_a_minimal_file() {
        let file: ScenarioFile = serde_json::from_str(&minimal("")).unwrap();
        let out = ingest(&file, "fallback").unwrap();
        assert_eq!(out.scenario.name(), "fallback");
        assert_eq!(out.scenario.projectors().len(), 1);
        assert!(out.scenario.constraints().is_empty());
    }

    #[test]
    fn mixed_parity_contexts_are_skipped_not_fatal() {
        let file: ScenarioFile =
            serde_json::from_str(&minimal(r#", "contexts": [["A"]]"#)).unwrap();
        let out = ingest(&file, "t").unwrap();
        assert!(out.scenario.constraints().is_empty());
        assert_eq!(out.skipped.len(), 1);
        assert!(out.skipped[0].reason.contains("mixed parity"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = serde_json::from_str::<ScenarioFile>(&minimal(r#", "bogus": 1"#)).unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn floats_are_rejected_everywhere() {
        let err = serde_json::from_str::<ScenarioFile>(r#"{"qubits": 1.5, "observables": []}"#)
            .unwrap_err();
        assert!(err.to_string().contains("invalid type"));
        let err = serde_json::from_str::<ScenarioFile>(
            r#"{"qubits": 2, "observables": [], "state": [[0.5, 1, 0, 1]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("invalid type"));
    }

    #[test]
    fn semantic_failures_name_the_offender() {
        let json = r#"{"qubits": 1,
            "observables": [{"id": "A", "pauli": "X"}, {"id": "B", "pauli": "Z"}],
            "contexts": [["A", "B"]]}"#;
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        let err = ingest(&file, "t").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("context 0"), "got: {msg}");
        assert!(msg.contains("non-commuting"), "got: {msg}");

        let json = r#"{"qubits": 1, "observables": [{"id": "A", "pauli": "X"}],
            "contexts": [["A", "MISSING"]]}"#;
        let err = ingest(&serde_json::from_str(json).unwrap(), "t").unwrap_err();
        assert!(err.to_string().contains("MISSING"));
    }

    #[test]
    fn export_round_trips_through_ingest() {
        let singlet = kscheck_core::Scenario::singlet();
        let file = export(&singlet).unwrap();
        assert_eq!(file.qubits, 2);
        assert_eq!(file.contexts.len(), 2);
        assert_eq!(file.state_contexts.len(), 3);
        let back = ingest(&file, "x").unwrap();
        assert_eq!(back.scenario.name(), "singlet");
        assert_eq!(back.scenario.constraints(), singlet.constraints());
        assert_eq!(back.scenario.state(), singlet.state());
    }
}
