//! Report assembly and rendering.
//!
//! The JSON form is the contract: a versioned schema that carries every
//! number needed to re-derive the verdict (constraints with their allowed
//! sums, occurrence counts, enumeration totals, witnesses and violation
//! samples). Serialization is deterministic — struct fields in declaration
//! order, maps in key order — so identical inputs produce byte-identical
//! reports. The text form is a human rendering of the same data.

use serde::Serialize;

use kscheck_core::scalar;
use kscheck_core::{
    Certificate, Check, ConstraintOrigin, MagicSquare, Parity, ParityProof, Scenario, Verdict,
};

use crate::scenario_file::SkippedContext;

/// Bumped whenever a field changes meaning, is added, or is removed.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// How sign assignments are encoded in multiplicative certificates.
pub const SIGN_VALUE_ENCODING: &str = "0 means +1, 1 means -1";

#[derive(Serialize)]
pub struct ScenarioSummary {
    pub name: String,
    pub dimension: usize,
    pub projector_count: usize,
    pub projectors: Vec<String>,
    pub constraint_count: usize,
    pub has_state: bool,
    /// State entries as `[re_num, re_den, im_num, im_den]` decimal strings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[String; 4]>>,
}

#[derive(Serialize)]
pub struct ConstraintEntry {
    pub index: usize,
    pub members: Vec<String>,
    pub allowed_sums: Vec<u32>,
    pub origin: ConstraintOrigin,
    pub parity: Parity,
}

#[derive(Serialize)]
pub struct LineEntry {
    pub index: usize,
    pub name: String,
    pub cells: Vec<String>,
    pub sign: kscheck_core::Sign,
}

#[derive(Serialize)]
pub struct MultiplicativeSection {
    pub value_encoding: &'static str,
    pub lines: Vec<LineEntry>,
    pub certificate: Certificate,
}

#[derive(Serialize)]
pub struct CriticalityEntry {
    pub dropped_constraint: usize,
    pub certificate: Certificate,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub scenario: ScenarioSummary,
    pub identities: Vec<Check>,
    pub constraints: Vec<ConstraintEntry>,
    pub skipped_contexts: Vec<SkippedContext>,
    pub parity_proof: ParityProof,
    pub enumeration: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicative: Option<MultiplicativeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criticality: Option<Vec<CriticalityEntry>>,
    pub verdict: &'static str,
    pub exit_status: i32,
}

#[derive(Serialize)]
pub struct DeriveReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub scenario: ScenarioSummary,
    pub constraints: Vec<ConstraintEntry>,
    pub skipped_contexts: Vec<SkippedContext>,
}

pub fn scenario_summary(scenario: &Scenario) -> ScenarioSummary {
    ScenarioSummary {
        name: scenario.name().to_string(),
        dimension: scenario.projectors().first().map(|p| p.dim()).unwrap_or(0),
        projector_count: scenario.projectors().len(),
        projectors: scenario.projectors().iter().map(|p| p.label().to_string()).collect(),
        constraint_count: scenario.constraints().len(),
        has_state: scenario.state().is_some(),
        state: scenario
            .state()
            .map(|psi| psi.entries().iter().map(scalar::gaussian_decimal_parts).collect()),
    }
}

pub fn constraint_entries(scenario: &Scenario) -> Vec<ConstraintEntry> {
    scenario
        .constraints()
        .iter()
        .enumerate()
        .map(|(index, c)| ConstraintEntry {
            index,
            members: c.members().to_vec(),
            allowed_sums: c.allowed_sums().iter().copied().collect(),
            origin: c.origin(),
            parity: c.parity(),
        })
        .collect()
}

pub fn line_entries(square: &MagicSquare) -> Vec<LineEntry> {
    square
        .lines()
        .iter()
        .map(|line| LineEntry {
            index: line.index,
            name: line.name.clone(),
            cells: line.cells.iter().map(|&i| square.cells()[i].label().to_string()).collect(),
            sign: line.sign,
        })
        .collect()
}

fn parity_word(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Sat => "SAT",
        Verdict::Unsat => "UNSAT",
    }
}

fn push_constraint_lines(out: &mut String, entries: &[ConstraintEntry]) {
    for c in entries {
        let terms: Vec<String> = c.members.iter().map(|m| format!("v({m})")).collect();
        let sums: Vec<String> = c.allowed_sums.iter().map(u32::to_string).collect();
        let origin = match c.origin {
            ConstraintOrigin::Spectral => "spectral",
            ConstraintOrigin::StateEigenvector => "state-eigenvector",
        };
        out.push_str(&format!(
            "  {}. [{}] {} in {{{}}}\n",
            c.index,
            origin,
            terms.join(" + "),
            sums.join(", ")
        ));
    }
}

fn push_skipped_lines(out: &mut String, skipped: &[SkippedContext]) {
    if skipped.is_empty() {
        return;
    }
    out.push_str("skipped contexts (yielded no constraint):\n");
    for s in skipped {
        out.push_str(&format!(
            "  context {} [{}]: {}\n",
            s.context_index,
            s.members.join(", "),
            s.reason
        ));
    }
}

fn push_certificate_lines(out: &mut String, cert: &Certificate, kind: &str) {
    out.push_str(&format!(
        "  verdict {}: {} of {} assignments satisfy every {}\n",
        verdict_word(cert.verdict),
        cert.satisfying_count,
        cert.assignments_checked,
        kind,
    ));
    if let Some(w) = &cert.witness {
        let parts: Vec<String> = w.values().iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("  witness: {}\n", parts.join(" ")));
    }
    if let Some(v) = &cert.violated_example {
        out.push_str(&format!(
            "  first violating assignment breaks {} {}\n",
            kind, v.constraint_index
        ));
    }
}

/// Human rendering of a verify report.
pub fn verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("scenario: {}\n", r.scenario.name));
    out.push_str(&format!(
        "  dimension {}; projectors: {}; constraints: {}; {}\n",
        r.scenario.dimension,
        r.scenario.projector_count,
        r.scenario.constraint_count,
        if r.scenario.has_state { "with declared state" } else { "no declared state" },
    ));

    let failed: Vec<&Check> = r.identities.iter().filter(|c| !c.passed).collect();
    if failed.is_empty() {
        out.push_str(&format!("identities: all {} passed\n", r.identities.len()));
    } else {
        out.push_str(&format!("identities: {} FAILED of {}\n", failed.len(), r.identities.len()));
        for c in failed {
            out.push_str(&format!("  FAILED: {}\n", c.name));
        }
    }

    out.push_str("constraints:\n");
    push_constraint_lines(&mut out, &r.constraints);
    push_skipped_lines(&mut out, &r.skipped_contexts);

    out.push_str("parity argument:\n");
    let odd_count =
        r.parity_proof.constraint_parities.iter().filter(|&&p| p == Parity::Odd).count();
    match r.parity_proof.lhs_parity {
        Some(p) => out.push_str(&format!(
            "  every projector occurs an even number of times, so any assignment's total is {}\n",
            parity_word(p)
        )),
        None => out.push_str(
            "  some projector occurs an odd number of times; the total parity is assignment-dependent\n",
        ),
    }
    out.push_str(&format!(
        "  odd-sum constraints: {} of {}, so the required total is {}\n",
        odd_count,
        r.parity_proof.constraint_parities.len(),
        parity_word(r.parity_proof.rhs_parity)
    ));
    out.push_str(&format!(
        "  conclusive: {}\n",
        if r.parity_proof.conclusive { "yes - no assignment can exist" } else { "no" }
    ));

    match &r.enumeration {
        Some(cert) => {
            out.push_str("enumeration:\n");
            push_certificate_lines(&mut out, cert, "constraint");
        }
        None => out.push_str("enumeration: skipped\n"),
    }

    if let Some(m) = &r.multiplicative {
        out.push_str(&format!("multiplicative search ({}):\n", m.value_encoding));
        for line in &m.lines {
            out.push_str(&format!(
                "  {} [{}] must multiply to {}1\n",
                line.name,
                line.cells.join(", "),
                line.sign.as_str()
            ));
        }
        push_certificate_lines(&mut out, &m.certificate, "line");
    }

    if let Some(entries) = &r.criticality {
        out.push_str("criticality scan (constraint dropped -> verdict):\n");
        for e in entries {
            out.push_str(&format!(
                "  drop {} -> {} ({} of {})\n",
                e.dropped_constraint,
                verdict_word(e.certificate.verdict),
                e.certificate.satisfying_count,
                e.certificate.assignments_checked
            ));
        }
    }

    out.push_str(&format!("verdict: {}\n", r.verdict));
    out
}

/// Human rendering of a derive report.
pub fn derive_text(r: &DeriveReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "scenario: {} (projectors: {})\n",
        r.scenario.name, r.scenario.projector_count
    ));
    out.push_str("derived constraints:\n");
    push_constraint_lines(&mut out, &r.constraints);
    if r.constraints.is_empty() {
        out.push_str("  (none)\n");
    }
    push_skipped_lines(&mut out, &r.skipped_contexts);
    out
}
