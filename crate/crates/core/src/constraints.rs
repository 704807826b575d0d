//! Parity sum rules on binary projectors, and scenarios that bundle them.
//!
//! The engine of every certificate in this crate is one observation: if a set
//! of pairwise-commuting projectors has a sum whose eigenvalues are *all even*
//! or *all odd*, then the number of 1-answers among those projectors must have
//! that same parity in every run — regardless of which eigenvalue turns up.
//! A noncontextual 0/1 assignment must therefore satisfy one parity equation
//! per such set, and those equations can be mutually unsatisfiable.
//!
//! Two constraint flavors exist:
//!
//! * **spectral** — the allowed sums are the exact eigenvalue set of the
//!   projector sum (uniform parity required);
//! * **state-eigenvector** — a fixed preparation is an exact eigenvector of
//!   the projector sum with integer eigenvalue `k`, pinning the sum of
//!   answers to exactly `k` for that preparation.
//!
//! Everything is derived from the operator algebra; allowed sums are never
//! taken on faith from input.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{Matrix, SpectrumError, Vector};
use crate::pauli::{singlet_state, MagicSquare, Projector};
use crate::scalar;
use crate::search::{Assignment, Parity};

/// How a constraint was derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintOrigin {
    Spectral,
    StateEigenvector,
}

/// Failures while deriving a constraint from a projector subset.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("empty projector subset")]
    EmptyContext,
    #[error("duplicate projector {label} in context")]
    DuplicateMember { label: String },
    #[error("non-commuting subset: {a} and {b} do not commute")]
    NonCommuting { a: String, b: String },
    #[error("projectors in context have mixed dimensions")]
    MixedDimensions,
    #[error("mixed parity: allowed sums {eigenvalues:?} are neither all even nor all odd")]
    MixedParity { eigenvalues: Vec<u32> },
    #[error("state is the zero vector")]
    ZeroState,
    #[error("state/projector dimension mismatch")]
    StateDimensionMismatch,
    #[error("state is not an eigenvector of the projector sum")]
    NotAnEigenvector,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// A parity sum rule: the values assigned to `members` must add up to one of
/// `allowed_sums`, all of which share a parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityConstraint {
    members: Vec<String>,
    allowed_sums: BTreeSet<u32>,
    origin: ConstraintOrigin,
}

impl ParityConstraint {
    /// Builds a constraint, sorting members and enforcing the structural
    /// rules: members unique, sums within `0..=members.len()`, sums of one
    /// uniform parity, and state-eigenvector constraints pinning exactly one
    /// sum.
    pub fn new(
        members: Vec<String>,
        allowed_sums: BTreeSet<u32>,
        origin: ConstraintOrigin,
    ) -> Result<Self, ConstraintError> {
        if members.is_empty() {
            return Err(ConstraintError::EmptyContext);
        }
        let mut sorted = members;
        sorted.sort();
        if let Some(dup) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ConstraintError::DuplicateMember { label: dup[0].clone() });
        }
        assert!(!allowed_sums.is_empty(), "constraint must allow at least one sum");
        assert!(
            allowed_sums.iter().all(|&s| s as usize <= sorted.len()),
            "allowed sums cannot exceed the member count"
        );
        if origin == ConstraintOrigin::StateEigenvector {
            assert_eq!(allowed_sums.len(), 1, "state constraints pin exactly one sum");
        }
        let parities: BTreeSet<u32> = allowed_sums.iter().map(|s| s % 2).collect();
        if parities.len() != 1 {
            return Err(ConstraintError::MixedParity {
                eigenvalues: allowed_sums.iter().copied().collect(),
            });
        }
        Ok(ParityConstraint { members: sorted, allowed_sums, origin })
    }

    /// Member labels, sorted.
    pub fn members(&self) -> &[String] {
        &self.members
    }

    pub fn allowed_sums(&self) -> &BTreeSet<u32> {
        &self.allowed_sums
    }

    pub fn origin(&self) -> ConstraintOrigin {
        self.origin
    }

    /// The parity every allowed sum shares.
    pub fn parity(&self) -> Parity {
        match self.allowed_sums.iter().next().expect("nonempty") % 2 {
            0 => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// Whether `assignment` satisfies this constraint. Labels missing from
    /// the assignment count as unsatisfied.
    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        let mut sum = 0u32;
        for label in &self.members {
            match assignment.get(label) {
                Some(v) => sum += u32::from(v),
                None => return false,
            }
        }
        self.allowed_sums.contains(&sum)
    }
}

fn check_context(projectors: &[&Projector]) -> Result<(), ConstraintError> {
    if projectors.is_empty() {
        return Err(ConstraintError::EmptyContext);
    }
    let dim = projectors[0].dim();
    if projectors.iter().any(|p| p.dim() != dim) {
        return Err(ConstraintError::MixedDimensions);
    }
    for (i, a) in projectors.iter().enumerate() {
        if projectors[..i].iter().any(|b| b.label() == a.label()) {
            return Err(ConstraintError::DuplicateMember { label: a.label().to_string() });
        }
        for b in &projectors[i + 1..] {
            if !a.matrix().commutes_with(b.matrix()) {
                return Err(ConstraintError::NonCommuting {
                    a: a.label().to_string(),
                    b: b.label().to_string(),
                });
            }
        }
    }
    Ok(())
}

fn sum_matrix(projectors: &[&Projector]) -> Matrix {
    projectors.iter().skip(1).fold(projectors[0].matrix().clone(), |acc, p| &acc + p.matrix())
}

/// Derives the spectral parity constraint for a set of pairwise-commuting
/// projectors: the allowed sums are exactly the eigenvalues of the projector
/// sum, computed as exact kernel dimensions over the window `0..=m`.
pub fn extract_constraint(projectors: &[&Projector]) -> Result<ParityConstraint, ConstraintError> {
    check_context(projectors)?;
    let m = projectors.len() as i64;
    let spectrum = sum_matrix(projectors).integer_spectrum(0..=m)?;
    let allowed: BTreeSet<u32> = spectrum.iter().map(|&(k, _)| k as u32).collect();
    ParityConstraint::new(
        projectors.iter().map(|p| p.label().to_string()).collect(),
        allowed,
        ConstraintOrigin::Spectral,
    )
}

/// Derives a state-eigenvector constraint: `state` must be an exact
/// eigenvector of the projector sum with integer eigenvalue `k`, and the
/// constraint then pins the answer sum to `k`. Scaling the state by any
/// nonzero factor yields the identical constraint.
pub fn state_constraint(
    state: &Vector,
    projectors: &[&Projector],
) -> Result<ParityConstraint, ConstraintError> {
    check_context(projectors)?;
    if state.is_zero() {
        return Err(ConstraintError::ZeroState);
    }
    if state.dim() != projectors[0].dim() {
        return Err(ConstraintError::StateDimensionMismatch);
    }
    let image = sum_matrix(projectors).apply(state);
    let k = (0..=projectors.len() as i64)
        .find(|&k| image == state.scale(&scalar::int(k)))
        .ok_or(ConstraintError::NotAnEigenvector)?;
    ParityConstraint::new(
        projectors.iter().map(|p| p.label().to_string()).collect(),
        BTreeSet::from([k as u32]),
        ConstraintOrigin::StateEigenvector,
    )
}

/// Problems with scenario assembly (rather than with a single constraint).
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("duplicate projector label {label}")]
    DuplicateProjector { label: String },
    #[error("constraint {index} references unknown projector {label}")]
    UnknownMember { index: usize, label: String },
    #[error("constraint {index} members do not commute: {a} and {b}")]
    NonCommutingMembers { index: usize, a: String, b: String },
}

/// A named bundle of projectors, parity constraints over them, and an
/// optional preparation state. This is the unit both provers consume.
#[derive(Clone, Debug)]
pub struct Scenario {
    name: String,
    projectors: Vec<Projector>,
    constraints: Vec<ParityConstraint>,
    state: Option<Vector>,
}

impl Scenario {
    /// Assembles and validates a scenario: projector labels unique, every
    /// constraint member resolving to a projector, and members of each
    /// constraint pairwise commuting.
    pub fn new(
        name: impl Into<String>,
        projectors: Vec<Projector>,
        constraints: Vec<ParityConstraint>,
        state: Option<Vector>,
    ) -> Result<Self, ScenarioError> {
        let mut by_label: HashMap<&str, &Projector> = HashMap::new();
        for p in &projectors {
            if by_label.insert(p.label(), p).is_some() {
                return Err(ScenarioError::DuplicateProjector { label: p.label().to_string() });
            }
        }
        for (index, c) in constraints.iter().enumerate() {
            let members: Vec<&Projector> =
                c.members()
                    .iter()
                    .map(|label| {
                        by_label.get(label.as_str()).copied().ok_or_else(|| {
                            ScenarioError::UnknownMember { index, label: label.clone() }
                        })
                    })
                    .collect::<Result<_, _>>()?;
            for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    if !a.matrix().commutes_with(b.matrix()) {
                        return Err(ScenarioError::NonCommutingMembers {
                            index,
                            a: a.label().to_string(),
                            b: b.label().to_string(),
                        });
                    }
                }
            }
        }
        Ok(Scenario { name: name.into(), projectors, constraints, state })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    pub fn constraints(&self) -> &[ParityConstraint] {
        &self.constraints
    }

    pub fn state(&self) -> Option<&Vector> {
        self.state.as_ref()
    }

    pub fn projector(&self, label: &str) -> Option<&Projector> {
        self.projectors.iter().find(|p| p.label() == label)
    }

    /// Whether `assignment` satisfies every constraint.
    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied_by(assignment))
    }

    /// Copy of the scenario with constraint `index` removed (projectors and
    /// state untouched). Used by the criticality scan.
    pub fn without_constraint(&self, index: usize) -> Scenario {
        assert!(index < self.constraints.len(), "constraint index out of range");
        let mut constraints = self.constraints.clone();
        constraints.remove(index);
        Scenario {
            name: format!("{} minus constraint {}", self.name, index),
            projectors: self.projectors.clone(),
            constraints,
            state: self.state.clone(),
        }
    }

    /// Copy of the scenario restricted to the constraints at `indices`
    /// (order preserved, duplicates allowed). Projectors and state untouched.
    pub fn with_constraint_subset(&self, indices: &[usize]) -> Scenario {
        let constraints = indices.iter().map(|&i| self.constraints[i].clone()).collect::<Vec<_>>();
        Scenario {
            name: format!("{} (constraint subset)", self.name),
            projectors: self.projectors.clone(),
            constraints,
            state: self.state.clone(),
        }
    }

    /// The state-independent scenario over the full Mermin-Peres square:
    /// nine projectors (one per cell) and six spectral constraints (one per
    /// row, one per column). Five lines force an even answer sum; the third
    /// column forces an odd one — and each projector sits in exactly two
    /// lines, which is the whole contradiction.
    pub fn mermin_peres() -> Scenario {
        let square = MagicSquare::mermin();
        Scenario::from_square_lines("mermin-peres", &square, &[0, 1, 2, 3, 4, 5])
    }

    /// Builds a scenario from a square's cells and a chosen subset of its
    /// six lines (indices 0..=5: rows 1-3 then columns 1-3). All nine cell
    /// projectors are kept even if some line is omitted.
    pub fn from_square_lines(
        name: impl Into<String>,
        square: &MagicSquare,
        lines: &[usize],
    ) -> Scenario {
        let projectors: Vec<Projector> = square.cells().iter().map(|c| c.to_projector()).collect();
        let constraints = lines
            .iter()
            .map(|&li| {
                let line = &square.lines()[li];
                let members: Vec<&Projector> = line.cells.iter().map(|&i| &projectors[i]).collect();
                extract_constraint(&members).expect("square lines commute with uniform parity")
            })
            .collect();
        Scenario::new(name, projectors, constraints, None).expect("square scenario is coherent")
    }

    /// The state-specific scenario for the singlet preparation: the six
    /// projectors of the square's first two columns, their two spectral
    /// (even) constraints, and three singlet eigenvector constraints that
    /// each pin an odd answer sum of exactly 1.
    pub fn singlet() -> Scenario {
        let square = MagicSquare::mermin();
        let psi = singlet_state();
        // Column 1 top-down, then column 2 top-down.
        let cols: Vec<Projector> = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
            .iter()
            .map(|&(r, c)| square.cell(r, c).to_projector())
            .collect();
        let by_label = |label: &str| -> &Projector {
            cols.iter().find(|p| p.label() == label).expect("column projector")
        };
        let spectral_col1 =
            extract_constraint(&[by_label("P_2z"), by_label("P_1x"), by_label("P_1x2z")])
                .expect("column 1 commutes");
        let spectral_col2 =
            extract_constraint(&[by_label("P_1z"), by_label("P_2x"), by_label("P_1z2x")])
                .expect("column 2 commutes");
        let pin = |a: &str, b: &str| {
            state_constraint(&psi, &[by_label(a), by_label(b)])
                .expect("singlet is an exact eigenvector")
        };
        let constraints = vec![
            spectral_col1,
            spectral_col2,
            pin("P_1x", "P_2x"),
            pin("P_1z", "P_2z"),
            pin("P_1x2z", "P_1z2x"),
        ];
        Scenario::new("singlet", cols, constraints, Some(psi))
            .expect("singlet scenario is coherent")
    }
}
