//! Exact invariants of oriented links from grid (rectangular) diagrams.
//!
//! The library computes, over exact integer arithmetic throughout:
//!
//! * the normalized Conway function Γ of the link presented by a grid
//!   diagram, via the Fox matrix of its Neuwirth presentation
//!   ([`conway`]);
//! * the combinatorial (tilde) link Floer homology over GF(2), its
//!   bigraded Poincaré polynomial, and the graded Euler characteristic
//!   by three independent routes — homology, winding-matrix
//!   determinant, and Conway function ([`floer`]);
//! * cross-checks tying the routes together, move-invariance fuzzing
//!   under the Cromwell moves, and a built-in fixture corpus
//!   ([`verify`]).
//!
//! Polynomial arithmetic ([`laurent`]) is multivariate Laurent with
//! half-integer exponents stored exactly in doubled units; there are no
//! floating-point numbers and no tolerances anywhere.

pub mod conway;
pub mod floer;
pub mod grid;
pub mod laurent;
pub mod verify;

use thiserror::Error;

/// Unified error type; variants map onto process exit codes
/// (input errors → 2, resource limits → 3, broken invariants → 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A marking sequence is not a permutation of 1..=n.
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    /// An X and an O occupy the same cell.
    #[error("X and O collide in row {row}")]
    XOCollision { row: usize },
    /// Grids must have n ≥ 2.
    #[error("grid size {n} is too small (need n ≥ 2)")]
    SizeTooSmall { n: usize },
    /// A Cromwell move does not apply to the given grid.
    #[error("illegal move: {0}")]
    IllegalMove(String),
    /// Exact polynomial division left a remainder.
    #[error("not divisible: {0}")]
    NotDivisible(String),
    /// A corner saw zero or two candidate Fox entries instead of one.
    #[error("corner weight ambiguous at row {row}, column {col}: {detail}")]
    WeightAmbiguous {
        row: usize,
        col: usize,
        detail: String,
    },
    /// The sign–Maslov product is not constant across grid states.
    #[error("sign/Maslov constancy violated: {0}")]
    LemmaViolation(String),
    /// The computation exceeds the configured size budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// Malformed grid file or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI and the C ABI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotPermutation(_)
            | Error::XOCollision { .. }
            | Error::SizeTooSmall { .. }
            | Error::IllegalMove(_)
            | Error::Parse(_) => 2,
            Error::ResourceLimit(_) => 3,
            Error::NotDivisible(_) | Error::WeightAmbiguous { .. } | Error::LemmaViolation(_) => 1,
        }
    }
}
