//! The two independent provers and their certificates.
//!
//! * [`exhaustive_search`] enumerates every 0/1 assignment to the projectors
//!   and counts the satisfying ones. Its certificate is unconditional: a
//!   verdict plus the numbers needed to re-check it.
//! * [`parity_argument`] never enumerates anything. If every projector occurs
//!   in an even number of constraints, the total of all constraint sums is
//!   even for *any* assignment; if additionally an odd number of constraints
//!   force an odd sum, the required total is odd — contradiction, hence
//!   unsatisfiable. The argument is three-valued by design: it either proves
//!   UNSAT or reports itself inconclusive. It never claims satisfiability.
//!
//! Enumeration order is deterministic and documented: projector labels are
//! sorted, and assignment `k` gives label `j` (in sorted order) the value of
//! bit `j` of the binary counter `k`. Witnesses and violation samples are the
//! first hits in that order, so repeated runs byte-match.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::constraints::Scenario;
use crate::pauli::MagicSquare;
use crate::Sign;

/// Hard cap on enumerable projectors: `2^30` assignments is where "seconds"
/// ends and "hours" begins, so anything larger is refused loudly rather than
/// attempted silently.
pub const MAX_ENUMERATED_PROJECTORS: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("{count} projectors would need 2^{count} assignments; enumeration is capped at {max}")]
    TooManyProjectors { count: usize, max: usize },
}

/// Verdict of an exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
}

/// Evenness of an integer sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A total 0/1 assignment, keyed by label. For multiplicative (sign)
/// assignments the same container is used with the encoding `0 -> +1`,
/// `1 -> -1` — the exact counterpart of the projector conversion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Assignment {
    values: BTreeMap<String, u8>,
}

impl Assignment {
    pub fn new(values: BTreeMap<String, u8>) -> Self {
        assert!(values.values().all(|&v| v <= 1), "assignment values must be 0 or 1");
        Assignment { values }
    }

    fn from_mask(labels: &[String], mask: u64) -> Self {
        let values = labels
            .iter()
            .enumerate()
            .map(|(j, label)| (label.clone(), ((mask >> j) & 1) as u8))
            .collect();
        Assignment { values }
    }

    pub fn get(&self, label: &str) -> Option<u8> {
        self.values.get(label).copied()
    }

    pub fn values(&self) -> &BTreeMap<String, u8> {
        &self.values
    }
}

/// The first violating assignment found, with the index of the first
/// constraint (or line) it breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationSample {
    pub assignment: Assignment,
    pub constraint_index: usize,
}

/// Outcome of an exhaustive enumeration, with enough data to re-check it:
/// a witness exists exactly for SAT verdicts, and UNSAT means zero
/// satisfying assignments out of all `2^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witness: Option<Assignment>,
    pub satisfying_count: u64,
    pub assignments_checked: u64,
    pub violated_example: Option<ViolationSample>,
}

/// One constraint compiled to bit masks over the sorted label list.
struct CompiledConstraint {
    member_mask: u64,
    allowed_bits: u64, // bit s set <=> sum s allowed
}

fn run_enumeration(
    labels: &[String],
    constraints: &[CompiledConstraint],
) -> Result<Certificate, SearchError> {
    let n = labels.len();
    if n > MAX_ENUMERATED_PROJECTORS {
        return Err(SearchError::TooManyProjectors { count: n, max: MAX_ENUMERATED_PROJECTORS });
    }
    let total: u64 = 1u64 << n;
    let mut satisfying = 0u64;
    let mut witness: Option<u64> = None;
    let mut violation: Option<(u64, usize)> = None;
    for mask in 0..total {
        let failed = constraints
            .iter()
            .position(|c| (c.allowed_bits >> (mask & c.member_mask).count_ones()) & 1 == 0);
        match failed {
            None => {
                satisfying += 1;
                witness.get_or_insert(mask);
            }
            Some(index) => {
                violation.get_or_insert((mask, index));
            }
        }
    }
    Ok(Certificate {
        verdict: if satisfying > 0 { Verdict::Sat } else { Verdict::Unsat },
        witness: witness.map(|m| Assignment::from_mask(labels, m)),
        satisfying_count: satisfying,
        assignments_checked: total,
        violated_example: violation.map(|(m, index)| ViolationSample {
            assignment: Assignment::from_mask(labels, m),
            constraint_index: index,
        }),
    })
}

/// Enumerates all `2^n` assignments over the scenario's projectors and
/// checks each against every constraint. Refuses scenarios with more than
/// [`MAX_ENUMERATED_PROJECTORS`] projectors.
pub fn exhaustive_search(scenario: &Scenario) -> Result<Certificate, SearchError> {
    let mut labels: Vec<String> =
        scenario.projectors().iter().map(|p| p.label().to_string()).collect();
    labels.sort();
    let position: BTreeMap<&str, usize> =
        labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let compiled: Vec<CompiledConstraint> = scenario
        .constraints()
        .iter()
        .map(|c| CompiledConstraint {
            member_mask: c
                .members()
                .iter()
                .map(|m| 1u64 << position[m.as_str()])
                .fold(0, |acc, b| acc | b),
            allowed_bits: c.allowed_sums().iter().fold(0, |acc, &s| acc | (1u64 << s)),
        })
        .collect();
    run_enumeration(&labels, &compiled)
}

/// The counting argument. `lhs_parity` is `Some(Even)` exactly when every
/// occurrence count is even (otherwise the left side depends on the
/// assignment and is reported as `None`); `rhs_parity` is the parity of the
/// number of odd constraints. The proof is conclusive — the scenario is
/// unsatisfiable — exactly when an always-even left side meets an odd right
/// side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityProof {
    pub occurrence_counts: BTreeMap<String, u32>,
    pub constraint_parities: Vec<Parity>,
    pub lhs_parity: Option<Parity>,
    pub rhs_parity: Parity,
    pub conclusive: bool,
}

/// Runs the parity argument. Never enumerates; never claims SAT.
pub fn parity_argument(scenario: &Scenario) -> ParityProof {
    let mut occurrence_counts: BTreeMap<String, u32> =
        scenario.projectors().iter().map(|p| (p.label().to_string(), 0)).collect();
    for c in scenario.constraints() {
        for m in c.members() {
            *occurrence_counts.get_mut(m).expect("member resolves") += 1;
        }
    }
    let constraint_parities: Vec<Parity> =
        scenario.constraints().iter().map(|c| c.parity()).collect();
    let all_even = occurrence_counts.values().all(|&c| c % 2 == 0);
    let odd_count = constraint_parities.iter().filter(|&&p| p == Parity::Odd).count();
    let rhs_parity = if odd_count % 2 == 1 { Parity::Odd } else { Parity::Even };
    let lhs_parity = all_even.then_some(Parity::Even);
    ParityProof {
        occurrence_counts,
        constraint_parities,
        lhs_parity,
        rhs_parity,
        conclusive: all_even && rhs_parity == Parity::Odd,
    }
}

/// Enumerates the `2^9` sign assignments (+1/-1 per cell, encoded 0/1) for a
/// subset of the square's lines, requiring each chosen line's value product
/// to equal the sign of its verified operator product. Line indices follow
/// [`MagicSquare::lines`]: rows 1-3 then columns 1-3.
pub fn multiplicative_search_lines(square: &MagicSquare, line_indices: &[usize]) -> Certificate {
    let mut labels: Vec<String> = square.cells().iter().map(|c| c.label().to_string()).collect();
    labels.sort();
    let position: BTreeMap<&str, usize> =
        labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    // A product of three +/-1 values is +1 iff the count of -1 factors is
    // even, so a sign constraint is a parity constraint on the 0/1 encoding:
    // allowed popcounts are the even ones for +I lines, odd ones for -I.
    let compiled: Vec<CompiledConstraint> = line_indices
        .iter()
        .map(|&li| {
            let line = &square.lines()[li];
            let member_mask = line
                .cells
                .iter()
                .map(|&ci| 1u64 << position[square.cells()[ci].label()])
                .fold(0, |acc, b| acc | b);
            let allowed_bits = match line.sign {
                Sign::Plus => 0b0101,  // 0 or 2 of the three cells negative
                Sign::Minus => 0b1010, // 1 or 3 of the three cells negative
            };
            CompiledConstraint { member_mask, allowed_bits }
        })
        .collect();
    run_enumeration(&labels, &compiled).expect("nine cells are always enumerable")
}

/// Multiplicative counterpart of the exhaustive search: all six lines of the
/// square. `violated_example.constraint_index` is a line index.
pub fn multiplicative_search(square: &MagicSquare) -> Certificate {
    multiplicative_search_lines(square, &[0, 1, 2, 3, 4, 5])
}

/// Whether a sign assignment (0 -> +1, 1 -> -1) reproduces every line's
/// verified product sign. Used to re-check multiplicative witnesses.
pub fn check_sign_assignment(square: &MagicSquare, assignment: &Assignment) -> bool {
    square.lines().iter().all(|line| {
        let mut negatives = 0u32;
        for &ci in &line.cells {
            match assignment.get(square.cells()[ci].label()) {
                Some(v) => negatives += u32::from(v),
                None => return false,
            }
        }
        match line.sign {
            Sign::Plus => negatives.is_multiple_of(2),
            Sign::Minus => !negatives.is_multiple_of(2),
        }
    })
}

/// Re-runs the exhaustive search once per constraint with that constraint
/// dropped. For an unsatisfiable scenario, every drop flipping the verdict to
/// SAT means no constraint is redundant — the contradiction is critical.
pub fn criticality_scan(scenario: &Scenario) -> Result<Vec<(usize, Certificate)>, SearchError> {
    (0..scenario.constraints().len())
        .map(|index| exhaustive_search(&scenario.without_constraint(index)).map(|c| (index, c)))
        .collect()
}
