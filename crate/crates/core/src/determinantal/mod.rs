//! The generic determinantal family `V_{m,n}` of all `n × m` matrices.
//!
//! Over `F_q` every locus in scope (rank strata, Grassmannians of quotients of
//! `h0` or `h1`, incidence varieties) has a point count that is a polynomial in
//! `q`. Dimensions are read off as degrees of interpolated count polynomials.

mod claims;
mod counting;
mod interp;

pub use claims::{
    codimension_law, ANCHOR_BIRATIONAL, ANCHOR_CODIM, ANCHOR_D0, ANCHOR_GR_DIM, ANCHOR_INC_DIM, ANCHOR_INC_EDGE,
    ANCHOR_LEADING, ANCHOR_WINDOW, dimension_matches, verify_dimension_claims, ClaimItem, DimensionReport, LocusFit, PrimePlan,
};
pub use counting::{
    column_extension_rank_counts, count_grassmannian, count_incidence, enumerate_rank_counts,
    exhaustive_locus_count, exhaustive_rank_counts, gaussian_binomial, general_linear_order, rank_count_formula,
    stratified_locus_count, CountEngine, CountRecord, CountSource, CountTable, Locus, DEFAULT_BUDGET,
};
pub use interp::{fit_count_polynomial, CountPolynomial, CountPolynomialRecord, FitError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeterminantalError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("enumeration needs {} matrices, budget is {budget}", required.map_or("more than 2^128".to_string(), |r| r.to_string()))]
    BudgetExceeded { required: Option<u128>, budget: u64 },
    #[error("rank {k} out of range 0..={max}")]
    RankOutOfRange { k: usize, max: usize },
    #[error("incidence counting needs n >= m (got m = {m}, n = {n}); pass the shifted dual")]
    NegativeRank { m: usize, n: usize },
    #[error(transparent)]
    Fit(#[from] FitError),
}

/// `V_{m,n}` over `F_q`: the family of maps `F_q^m -> F_q^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub m: usize,
    pub n: usize,
    pub q: u64,
}

impl FamilySpec {
    pub fn new(m: usize, n: usize, q: u64) -> Result<Self, DeterminantalError> {
        if !is_prime(q) {
            return Err(DeterminantalError::NotPrime(q));
        }
        Ok(FamilySpec { m, n, q })
    }

    /// `q^{mn}`, or `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        (self.q as u128).checked_pow((self.m * self.n) as u32)
    }

    /// `e = n - m`.
    pub fn rank_index(&self) -> i64 {
        self.n as i64 - self.m as i64
    }

    pub fn dim(&self) -> i64 {
        (self.m * self.n) as i64
    }

    pub fn family_label(&self) -> String {
        format!("V_{{{},{}}}", self.m, self.n)
    }

    pub fn with_q(&self, q: u64) -> Result<Self, DeterminantalError> {
        Self::new(self.m, self.n, q)
    }

    /// The family of transposes, `V_{n,m}`.
    pub fn dual(&self) -> Self {
        FamilySpec { m: self.n, n: self.m, q: self.q }
    }
}
