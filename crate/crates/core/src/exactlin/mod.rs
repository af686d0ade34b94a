//! Exact dense linear algebra over prime fields and the rationals.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals, MAX_PRIME};
pub use matrix::{rank_mod_p, Echelon, Matrix};
pub use subspace::Subspace;

use thiserror::Error;

pub type FpMatrix = Matrix<PrimeField>;
pub type FpSubspace = Subspace<PrimeField>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("rows of unequal length")]
    RaggedRows,
}
