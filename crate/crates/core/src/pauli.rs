//! Pauli operators, signed Pauli strings, binary projectors, and the
//! Mermin-Peres magic square.
//!
//! Conventions, fixed once and for all:
//!
//! * `X = [[0,1],[1,0]]`, `Y = [[0,-i],[i,0]]`, `Z = [[1,0],[0,-1]]`;
//! * the leftmost letter of a Pauli string acts on particle 1, and the
//!   computational basis is ordered `|00>, |01>, |10>, |11>`;
//! * an observable with eigenvalues +1/-1 is converted to a binary ("yes=1")
//!   projector via `P = (I - O)/2`, which maps eigenvalue +1 to answer 0 and
//!   eigenvalue -1 to answer 1.
//!
//! The magic square is the 3x3 arrangement of two-qubit Pauli observables in
//! which every cell commutes with the other cells of its row and column, each
//! row multiplies to `+I`, the first two columns multiply to `+I`, and the
//! third column multiplies to `-I`. That lone minus sign is the engine of the
//! contradiction everything else in this crate certifies.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{Matrix, Vector};
use crate::scalar::{self, GaussianRational};

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> Matrix {
        match self {
            Pauli::I => Matrix::identity(2),
            Pauli::X => Matrix::from_entries(
                2,
                vec![scalar::int(0), scalar::int(1), scalar::int(1), scalar::int(0)],
            ),
            Pauli::Y => Matrix::from_entries(
                2,
                vec![scalar::int(0), scalar::imag(-1), scalar::imag(1), scalar::int(0)],
            ),
            Pauli::Z => Matrix::diagonal(&[1, -1]),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Overall sign of a Pauli string or of an operator product that lands on
/// plus or minus the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn scalar(self) -> GaussianRational {
        match self {
            Sign::Plus => scalar::int(1),
            Sign::Minus => scalar::int(-1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Errors from parsing a signed Pauli string such as `+XZ` or `-ZZ`.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliParseError {
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid Pauli letter {letter:?}; expected one of I, X, Y, Z")]
    BadLetter { letter: char },
}

/// Signed tensor product of Pauli letters, e.g. `-ZZ` for `-(Z (x) Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliString {
    sign: Sign,
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(sign: Sign, letters: Vec<Pauli>) -> Self {
        assert!(!letters.is_empty(), "Pauli string must have at least one letter");
        PauliString { sign, letters }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    /// Number of particles the string acts on.
    pub fn num_particles(&self) -> usize {
        self.letters.len()
    }

    /// Expands the string into its `2^n x 2^n` matrix. The first letter is
    /// the leftmost Kronecker factor.
    pub fn matrix(&self) -> Matrix {
        let product = self
            .letters
            .iter()
            .skip(1)
            .fold(self.letters[0].matrix(), |acc, p| acc.tensor(&p.matrix()));
        match self.sign {
            Sign::Plus => product,
            Sign::Minus => -&product,
        }
    }
}

impl FromStr for PauliString {
    type Err = PauliParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, s.strip_prefix('+').unwrap_or(s)),
        };
        if body.is_empty() {
            return Err(PauliParseError::Empty);
        }
        let letters = body
            .chars()
            .map(|c| Pauli::from_char(c).ok_or(PauliParseError::BadLetter { letter: c }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PauliString::new(sign, letters))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            f.write_str("-")?;
        }
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

/// A labeled Hermitian involution built from a Pauli string. Its eigenvalues
/// are exactly +1 and -1, which is what makes the binary-projector conversion
/// meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observable {
    label: String,
    string: PauliString,
    matrix: Matrix,
}

impl Observable {
    /// Builds the observable and verifies (defensively — it cannot fail for a
    /// well-formed Pauli string) that the matrix is a Hermitian involution.
    ///
    /// # Panics
    /// If the expanded matrix is not a Hermitian involution.
    pub fn new(label: impl Into<String>, string: PauliString) -> Self {
        let label = label.into();
        let matrix = string.matrix();
        assert!(matrix.is_hermitian(), "observable {label} is not Hermitian");
        assert!(matrix.is_involution(), "observable {label} does not square to the identity");
        Observable { label, string, matrix }
    }

    /// Convenience: parse `string` and build the observable.
    pub fn parse(label: impl Into<String>, string: &str) -> Result<Self, PauliParseError> {
        Ok(Observable::new(label, string.parse::<PauliString>()?))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn string(&self) -> &PauliString {
        &self.string
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Binary projector `P = (I - O)/2` labeled `P_<label>`: measuring 1
    /// ("yes") on `P` is the same event as measuring eigenvalue -1 on `O`.
    pub fn to_projector(&self) -> Projector {
        Projector::from_observable(format!("P_{}", self.label), self.clone())
    }
}

/// Rank-deficient binary projector obtained from an observable; answers are
/// 0 or 1, and for two-qubit Pauli observables the projector always has
/// trace 2 (two "yes" directions out of four).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projector {
    label: String,
    matrix: Matrix,
    source: Observable,
}

impl Projector {
    /// `P = (I - O)/2` under an explicit label.
    ///
    /// # Panics
    /// If the result fails the Hermitian/idempotent check, which cannot
    /// happen for a valid observable.
    pub fn from_observable(label: impl Into<String>, source: Observable) -> Self {
        let label = label.into();
        let dim = source.dim();
        let matrix = (&Matrix::identity(dim) - source.matrix()).scale(&scalar::ratio(1, 2));
        assert!(matrix.is_hermitian(), "projector {label} is not Hermitian");
        assert!(matrix.is_idempotent(), "projector {label} is not idempotent");
        Projector { label, matrix, source }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source(&self) -> &Observable {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Structural problems with a would-be magic square.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SquareError {
    #[error("cells of {line} do not pairwise commute: {a} and {b}")]
    NonCommutingLine { line: String, a: String, b: String },
    #[error("ordered product of {line} is not +I or -I")]
    ProductNotSignedIdentity { line: String },
    #[error("duplicate cell label {label}")]
    DuplicateLabel { label: String },
    #[error("cells have mixed dimensions")]
    MixedDimensions,
}

/// Human-readable line name used in errors, certificates, and reports.
/// Rows and columns are numbered 1..=3; lines are indexed 0..=5 in the order
/// row 1, row 2, row 3, column 1, column 2, column 3.
pub fn line_name(index: usize) -> String {
    match index {
        0..=2 => format!("row {}", index + 1),
        3..=5 => format!("column {}", index - 2),
        _ => panic!("line index out of range"),
    }
}

/// One row or column of a square: the flat cell indices it covers and the
/// sign of its ordered operator product, read off the verified matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareLine {
    pub index: usize,
    pub name: String,
    pub cells: [usize; 3],
    pub sign: Sign,
}

/// A 3x3 array of commuting-by-line observables whose row and column products
/// are each exactly `+I` or `-I`. Construction verifies all of that from the
/// matrices; nothing about the signs is assumed.
#[derive(Clone, Debug)]
pub struct MagicSquare {
    cells: Vec<Observable>, // row-major, exactly 9
    lines: Vec<SquareLine>, // rows 1-3 then columns 1-3
}

impl MagicSquare {
    pub fn new(cells: [[Observable; 3]; 3]) -> Result<Self, SquareError> {
        let cells: Vec<Observable> = cells.into_iter().flatten().collect();
        let dim = cells[0].dim();
        if cells.iter().any(|c| c.dim() != dim) {
            return Err(SquareError::MixedDimensions);
        }
        for (i, a) in cells.iter().enumerate() {
            if cells[..i].iter().any(|b| b.label() == a.label()) {
                return Err(SquareError::DuplicateLabel { label: a.label().to_string() });
            }
        }

        let line_cells = |index: usize| -> [usize; 3] {
            if index < 3 {
                [3 * index, 3 * index + 1, 3 * index + 2] // row
            } else {
                [index - 3, index, index + 3] // column
            }
        };

        let mut lines = Vec::with_capacity(6);
        for index in 0..6 {
            let name = line_name(index);
            let idx = line_cells(index);
            let members = [&cells[idx[0]], &cells[idx[1]], &cells[idx[2]]];
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if !members[i].matrix().commutes_with(members[j].matrix()) {
                        return Err(SquareError::NonCommutingLine {
                            line: name,
                            a: members[i].label().to_string(),
                            b: members[j].label().to_string(),
                        });
                    }
                }
            }
            let product = &(members[0].matrix() * members[1].matrix()) * members[2].matrix();
            let sign = if product == Matrix::identity(dim) {
                Sign::Plus
            } else if product == -&Matrix::identity(dim) {
                Sign::Minus
            } else {
                return Err(SquareError::ProductNotSignedIdentity { line: name });
            };
            lines.push(SquareLine { index, name, cells: idx, sign });
        }

        Ok(MagicSquare { cells, lines })
    }

    /// The standard Mermin-Peres square:
    ///
    /// ```text
    ///   2z    1z    1z2z        I(x)Z   Z(x)I   Z(x)Z
    ///   1x    2x    1x2x    =   X(x)I   I(x)X   X(x)X
    ///   1x2z  1z2x  1y2y        X(x)Z   Z(x)X   Y(x)Y
    /// ```
    ///
    /// Labels name which particle (1 or 2) is measured along which axis. All
    /// three rows and the first two columns multiply to `+I`; the third
    /// column multiplies to `-I` because `(X(x)X)(Y(x)Y) = -(Z(x)Z)`.
    pub fn mermin() -> Self {
        let cell = |label: &str, s: &str| Observable::parse(label, s).expect("valid Pauli string");
        let square = MagicSquare::new([
            [cell("2z", "IZ"), cell("1z", "ZI"), cell("1z2z", "ZZ")],
            [cell("1x", "XI"), cell("2x", "IX"), cell("1x2x", "XX")],
            [cell("1x2z", "XZ"), cell("1z2x", "ZX"), cell("1y2y", "YY")],
        ])
        .expect("the standard square is magic");
        let signs: Vec<Sign> = square.lines.iter().map(|l| l.sign).collect();
        assert_eq!(
            signs,
            vec![Sign::Plus, Sign::Plus, Sign::Plus, Sign::Plus, Sign::Plus, Sign::Minus],
            "standard square must have its single minus sign in column 3"
        );
        square
    }

    /// Cell at `(row, col)`, both 0-based.
    pub fn cell(&self, row: usize, col: usize) -> &Observable {
        &self.cells[3 * row + col]
    }

    /// All nine cells, row-major.
    pub fn cells(&self) -> &[Observable] {
        &self.cells
    }

    /// The six verified lines: rows 1-3 then columns 1-3.
    pub fn lines(&self) -> &[SquareLine] {
        &self.lines
    }

    pub fn dim(&self) -> usize {
        self.cells[0].dim()
    }
}

/// The (unnormalized) two-qubit singlet state `|01> - |10>`, kept with
/// integer entries `(0, 1, -1, 0)`. Every identity it enters is homogeneous,
/// so the missing `1/sqrt(2)` never matters — and never drags in an
/// irrational number.
pub fn singlet_state() -> Vector {
    Vector::from_ints(&[0, 1, -1, 0])
}
