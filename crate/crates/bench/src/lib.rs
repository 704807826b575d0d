//! Shared fixtures for the benchmarks: operators sized beyond the built-in
//! scenarios (four particles, 16x16 matrices) so the exact-arithmetic
//! kernels get timed on something heavier than the 4x4 cases.

use std::str::FromStr;

use kscheck_core::{scalar, Matrix, Observable, PauliString, Projector};

/// The 16x16 matrix of a four-particle Pauli string.
pub fn four_particle_matrix(s: &str) -> Matrix {
    PauliString::from_str(s).expect("valid Pauli string").matrix()
}

/// Three pairwise-commuting four-particle observables whose product is the
/// identity — a 16-dimensional analogue of a square line.
pub fn four_particle_context() -> Vec<Projector> {
    ["XXXX", "ZZZZ", "YYYY"]
        .iter()
        .map(|s| Observable::parse(*s, s).expect("valid observable").to_projector())
        .collect()
}

/// The projector sum over [`four_particle_context`]; its exact spectrum is
/// {0 (x4), 2 (x12)}.
pub fn four_particle_projector_sum() -> Matrix {
    four_particle_context().iter().fold(Matrix::zero(16), |acc, p| &acc + p.matrix())
}

/// A 16x16 matrix with a 4-dimensional kernel: the projector sum shifted by
/// -2I, so its kernel is the eigenvalue-2 eigenspace complement.
pub fn shifted_sum() -> Matrix {
    &four_particle_projector_sum() - &Matrix::identity(16).scale(&scalar::int(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_the_documented_shapes() {
        let sum = four_particle_projector_sum();
        assert_eq!(sum.dim(), 16);
        assert_eq!(sum.integer_spectrum(0..=3), Ok(vec![(0, 4), (2, 12)]));
        assert_eq!(shifted_sum().kernel_dimension(), 12);
        let product = four_particle_context()
            .iter()
            .fold(Matrix::identity(16), |acc, p| &acc * p.source().matrix());
        assert_eq!(product, Matrix::identity(16), "the three observables multiply to I");
    }
}
