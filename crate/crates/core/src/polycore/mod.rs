//! Exact polynomial arithmetic over the rationals: sparse bivariate and dense
//! univariate polynomials, GCDs, contents, resultants and squarefree
//! decomposition.

pub mod content;
pub mod dense;
pub mod gcd;
pub mod modular;
pub mod multi;
pub mod resultant;
pub mod squarefree;
pub mod text;
pub mod uni;

use thiserror::Error;

pub use content::content_wrt_t;
pub use multi::{Monomial, MultiPoly};
pub use resultant::{resultant_t, resultant_uni};
pub use squarefree::{yun_squarefree, SquarefreeDecomposition};
pub use uni::{rat, Coefficient, QPoly, UniPoly, ZPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("{0} of the zero polynomial is undefined")]
    ZeroInput(&'static str),
    #[error("resultant needs at least one input of positive degree")]
    ConstantResultantInputs,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}
