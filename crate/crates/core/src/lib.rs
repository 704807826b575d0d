//! Exact-arithmetic engine for Kochen-Specker contradiction certificates.
//!
//! The crate builds two-qubit Pauli observables (most prominently the
//! Mermin-Peres magic square), converts them into binary projectors, derives
//! parity sum rules that any noncontextual 0/1 value assignment would have to
//! obey, and then proves that no such assignment exists — twice over, by an
//! exhaustive enumeration and by an independent counting argument. Every
//! number involved is a Gaussian rational, so every verdict is exact: there
//! are no floats and no tolerances anywhere.
//!
//! ```
//! use kscheck_core::{exhaustive_search, parity_argument, Scenario, Verdict};
//!
//! let scenario = Scenario::mermin_peres();
//! let proof = parity_argument(&scenario);
//! let cert = exhaustive_search(&scenario).unwrap();
//! assert!(proof.conclusive);
//! assert_eq!(cert.verdict, Verdict::Unsat);
//! assert_eq!(cert.assignments_checked, 512);
//! ```

pub mod checks;
pub mod constraints;
pub mod matrix;
pub mod pauli;
pub mod scalar;
pub mod search;

pub use checks::Check;
pub use constraints::{
    extract_constraint, state_constraint, ConstraintError, ConstraintOrigin, ParityConstraint,
    Scenario, ScenarioError,
};
pub use matrix::{Matrix, SpectrumError, Vector};
pub use pauli::{singlet_state, MagicSquare, Observable, Pauli, PauliString, Projector, Sign};
pub use scalar::{GaussianRational, Rational};
pub use search::{
    check_sign_assignment, criticality_scan, exhaustive_search, multiplicative_search,
    multiplicative_search_lines, parity_argument, Assignment, Certificate, Parity, ParityProof,
    SearchError, Verdict, ViolationSample,
};
