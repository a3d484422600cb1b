//! Exact linear algebra over ℚ and ℚ(i).

mod eigensplit;
mod field;
mod hnf;
mod matrix;
mod rat;
mod signature;

pub use eigensplit::{is_complex_structure, simult_eigensplit, EigenSplit};
pub use field::{Field, GaussRat};
pub use hnf::{hnf, same_lattice};
pub use matrix::{GaussMatrix, Mat, RatMatrix};
pub use rat::{format_rat, int, is_integer, lcm_denominators, parse_rat, rat, sign, Rat};
pub use signature::{signature, Signature};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix is not square: {0:?}")]
    NotSquare((usize, usize)),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has non-integer entries")]
    NonInteger,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not square to -1")]
    NotComplexStructure,
    #[error("complex structures do not commute")]
    NotCommuting,
    #[error("parse error: {0}")]
    Parse(String),
}
