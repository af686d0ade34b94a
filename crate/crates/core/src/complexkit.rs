//! Two- and three-term complexes restricted to a point.
//!
//! A two-term complex at a point is a single matrix `s : F^m -> F^n` (stored
//! with `n` rows). Cohomology is labelled so that `h0` is the cokernel
//! dimension and `h1` the kernel dimension; with this labelling the index
//! `h0 - h1 = n - m` is constant, the shifted dual is the transpose, and the
//! degeneracy locus of level `k` is `{h0 >= k}`.

use thiserror::Error;

use crate::exactlin::{Field, LinalgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("inconsistent complex: b·a is not zero")]
    Inconsistent,
    #[error("first map has a kernel of dimension {0}; not of Tor-amplitude [0,1]")]
    NotTorAmplitude(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexPoint<F: Field> {
    s: Matrix<F>,
}

impl<F: Field> ComplexPoint<F> {
    pub fn new(s: Matrix<F>) -> Self {
        ComplexPoint { s }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.s
    }

    /// Source dimension.
    pub fn m(&self) -> usize {
        self.s.cols()
    }

    /// Target dimension.
    pub fn n(&self) -> usize {
        self.s.rows()
    }

    pub fn rank_index(&self) -> i64 {
        self.n() as i64 - self.m() as i64
    }

    pub fn h0(&self) -> usize {
        self.n() - self.s.rank()
    }

    pub fn h1(&self) -> usize {
        self.m() - self.s.rank()
    }

    /// Both cohomology dimensions from a single elimination.
    pub fn cohomology(&self) -> (usize, usize) {
        let rank = self.s.rank();
        (self.n() - rank, self.m() - rank)
    }

    pub fn shifted_dual(&self) -> Self {
        ComplexPoint { s: self.s.transpose() }
    }

    pub fn in_stratum(&self, k: i64) -> bool {
        self.h0() as i64 >= k
    }
}

/// A three-term complex `V --a--> B --b--> V'` at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeTermPoint<F: Field> {
    a: Matrix<F>,
    b: Matrix<F>,
}

impl<F: Field> ThreeTermPoint<F> {
    /// Accepts the pair only if `b·a = 0` and `a` is injective.
    pub fn new(a: Matrix<F>, b: Matrix<F>) -> Result<Self, ComplexError> {
        if !b.mul(&a)?.is_zero() {
            return Err(ComplexError::Inconsistent);
        }
        let defect = a.cols() - a.rank();
        if defect != 0 {
            return Err(ComplexError::NotTorAmplitude(defect));
        }
        Ok(ThreeTermPoint { a, b })
    }

    pub fn first_map(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn second_map(&self) -> &Matrix<F> {
        &self.b
    }

    /// `(dim ker b - rank a, dim coker b)`.
    pub fn cohomology(&self) -> (usize, usize) {
        let rank_b = self.b.rank();
        let h0 = (self.b.cols() - rank_b) - self.a.rank();
        let h1 = self.b.rows() - rank_b;
        (h0, h1)
    }

    pub fn rank_index(&self) -> i64 {
        self.b.cols() as i64 - self.a.cols() as i64 - self.b.rows() as i64
    }

    /// The equivalent two-term complex: quotient the middle term by `im a`
    /// using a standard-basis complement, and take the shifted dual of the
    /// induced map `B/im a -> V'` so that the cohomology labels line up.
    pub fn two_term_reduction(&self) -> ComplexPoint<F> {
        let image = Subspace::span(&self.a);
        let complement = image.complement_indices();
        let induced = self.b.select_columns(&complement);
        ComplexPoint::new(induced.transpose())
    }
}

/// Cohomology of a three-term complex given as raw matrices, reporting any
/// violated precondition.
pub fn cohomology_of_three_term<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<(usize, usize), ComplexError> {
    Ok(ThreeTermPoint::new(a.clone(), b.clone())?.cohomology())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn zero_map_cohomology() {
        let c = ComplexPoint::new(Matrix::zeros(&f2(), 2, 3));
        assert_eq!((c.h0(), c.h1(), c.rank_index()), (2, 3, -1));
        assert_eq!(c.shifted_dual().h0(), 3);
    }

    #[test]
    fn identity_cohomology() {
        let c = ComplexPoint::new(Matrix::identity(&f2(), 3));
        assert_eq!(c.cohomology(), (0, 0));
        assert!(!c.in_stratum(1));
        assert!(c.in_stratum(0));
    }

    #[test]
    fn zero_square_map_lies_in_top_stratum() {
        let c = ComplexPoint::new(Matrix::zeros(&f2(), 2, 2));
        assert!(c.in_stratum(2));
        assert!(!c.in_stratum(3));
    }

    #[test]
    fn dual_is_involution() {
        let f = PrimeField::new(5).unwrap();
        let s = Matrix::from_i64_rows(&f, &[vec![1, 2, 3], vec![4, 0, 1]]).unwrap();
        let c = ComplexPoint::new(s);
        assert_eq!(c.shifted_dual().shifted_dual(), c);
    }

    #[test]
    fn three_term_rejects_bad_input() {
        let f = f2();
        let a = Matrix::from_i64_rows(&f, &[vec![1], vec![0]]).unwrap();
        let b = Matrix::from_i64_rows(&f, &[vec![1, 0]]).unwrap();
        assert_eq!(ThreeTermPoint::new(a.clone(), b).unwrap_err(), ComplexError::Inconsistent);
        let z = Matrix::zeros(&f, 2, 1);
        let b0 = Matrix::zeros(&f, 1, 2);
        assert_eq!(ThreeTermPoint::new(z, b0.clone()).unwrap_err(), ComplexError::NotTorAmplitude(1));
        assert!(ThreeTermPoint::new(a, b0).is_ok());
    }

    #[test]
    fn padded_injection_with_zero_second_map() {
        let f = PrimeField::new(3).unwrap();
        let a = Matrix::identity(&f, 2).vstack(&Matrix::zeros(&f, 3, 2)).unwrap();
        let b = Matrix::zeros(&f, 4, 5);
        let t = ThreeTermPoint::new(a, b).unwrap();
        assert_eq!(t.cohomology(), (5 - 2, 4));
        assert_eq!(t.two_term_reduction().cohomology(), t.cohomology());
    }

    #[test]
    fn adhm_unit_datum_at_origin() {
        // X = Y = 0, i = 0, j = 1 with n = r = 1
        let f = f2();
        let a = Matrix::from_i64_rows(&f, &[vec![0], vec![0], vec![1]]).unwrap();
        let b = Matrix::zeros(&f, 1, 3);
        assert_eq!(cohomology_of_three_term(&a, &b).unwrap(), (2, 1));
    }
}
