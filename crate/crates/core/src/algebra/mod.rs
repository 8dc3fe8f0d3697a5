//! Exact integer linear algebra and univariate integer polynomials.

mod group;
mod matrix;
mod poly;
mod snf;

use thiserror::Error;

pub(crate) use group::cokernel_with_basis;
pub use group::{cokernel, FiniteAbelianGroup, PrimaryComponent};
pub use matrix::IntMatrix;
pub use poly::{poly_eval, poly_resultant, IntPolynomial};
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("presentation matrix is singular; the cokernel is infinite")]
    SingularPresentation,
    #[error("zero polynomial has no resultant")]
    ZeroPolynomial,
    #[error("invalid invariant factors: {0}")]
    InvalidInvariantFactors(String),
}
