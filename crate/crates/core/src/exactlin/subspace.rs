//! Subspaces of `F^n` in canonical column-reduced echelon form.
//!
//! The basis columns are the nonzero rows of the reduced row echelon form of the
//! spanning vectors (taken as rows). Equal subspaces therefore have identical
//! representations, which is what the stability fixed-point loops use as their
//! termination test.

use super::field::Field;
use super::matrix::Matrix;
use super::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    /// Span of the columns of `m`.
    pub fn span(m: &Matrix<F>) -> Self {
        let ech = m.transpose().echelon();
        let k = ech.pivots.len();
        let rows: Vec<usize> = (0..k).collect();
        Subspace {
            ambient_dim: m.rows(),
            basis: ech.reduced.select_rows(&rows).transpose(),
        }
    }

    pub fn from_columns(field: &F, ambient_dim: usize, vectors: &[Vec<F::Elem>]) -> Self {
        Self::span(&Matrix::from_columns(field, ambient_dim, vectors))
    }

    pub fn zero(field: &F, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(field, ambient_dim, 0) }
    }

    pub fn full(field: &F, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(field, ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Columns form the canonical basis.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    /// Rows where the canonical basis has its leading entries.
    pub fn pivot_rows(&self) -> Vec<usize> {
        let f = self.field();
        (0..self.dim())
            .map(|c| (0..self.ambient_dim).find(|&r| !f.is_zero(self.basis.get(r, c))).expect("basis column is nonzero"))
            .collect()
    }

    fn check_ambient(&self, other: &Self, op: &'static str) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: (self.ambient_dim, self.dim()),
                right: (other.ambient_dim, other.dim()),
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let extended = self
            .basis
            .hstack(&Matrix::from_columns(self.field(), self.ambient_dim, &[v.to_vec()]))
            .expect("same ambient dimension");
        extended.rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|c| other.contains(&self.basis.column(c)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other, "sum")?;
        Ok(Self::span(&self.basis.hstack(&other.basis)?))
    }

    /// `U ∩ V`, from the kernel of `[U | -V]`.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other, "intersect")?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, self.ambient_dim));
        }
        let joint = self.basis.hstack(&other.basis.neg())?;
        let kernel = joint.kernel_basis();
        let coeffs = kernel.basis().select_rows(&(0..self.dim()).collect::<Vec<_>>());
        Ok(Self::span(&self.basis.dot(&coeffs)))
    }

    /// Vectors pairing to zero with every vector of `self`, as a subspace of the
    /// same ambient space (dual coordinates identified with the standard ones).
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.field(), self.ambient_dim);
        }
        self.basis.transpose().kernel_basis()
    }

    /// `{v : Mv ∈ U}`.
    pub fn preimage(m: &Matrix<F>, u: &Self) -> Result<Self, LinalgError> {
        if u.ambient_dim != m.rows() {
            return Err(LinalgError::DimensionMismatch {
                op: "preimage",
                left: m.shape(),
                right: (u.ambient_dim, u.dim()),
            });
        }
        let ann = u.annihilator();
        if ann.is_zero() {
            return Ok(Self::full(m.field(), m.cols()));
        }
        Ok(ann.basis.transpose().dot(m).kernel_basis())
    }

    /// `M(U)`.
    pub fn image_under(m: &Matrix<F>, u: &Self) -> Result<Self, LinalgError> {
        if u.ambient_dim != m.cols() {
            return Err(LinalgError::DimensionMismatch {
                op: "image_under",
                left: m.shape(),
                right: (u.ambient_dim, u.dim()),
            });
        }
        Ok(Self::span(&m.dot(&u.basis)))
    }

    /// Standard basis vectors completing `self` to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let pivots = self.pivot_rows();
        (0..self.ambient_dim).filter(|r| !pivots.contains(r)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let f = PrimeField::new(5).unwrap();
        let a = Subspace::from_columns(&f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let b = Subspace::from_columns(&f, 3, &[vec![1, 3, 1], vec![2, 4, 0], vec![1, 3, 1]]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersect_idempotent_and_preimage_of_zero_map() {
        let f = PrimeField::new(3).unwrap();
        let u = Subspace::from_columns(&f, 3, &[vec![1, 1, 0]]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        let z = Matrix::zeros(&f, 2, 4);
        let pre = Subspace::preimage(&z, &Subspace::zero(&f, 2)).unwrap();
        assert_eq!(pre, Subspace::full(&f, 4));
    }

    #[test]
    fn preimage_rejects_mismatch() {
        let f = PrimeField::new(3).unwrap();
        let z = Matrix::zeros(&f, 2, 4);
        assert!(Subspace::preimage(&z, &Subspace::zero(&f, 3)).is_err());
        let u = Subspace::zero(&f, 2);
        assert!(u.intersect(&Subspace::zero(&f, 3)).is_err());
    }

    #[test]
    fn preimage_of_line() {
        let f = PrimeField::new(7).unwrap();
        // projection onto the first coordinate of F^2
        let m = Matrix::from_i64_rows(&f, &[vec![1, 0], vec![0, 0]]).unwrap();
        let line = Subspace::from_columns(&f, 2, &[vec![0, 1]]);
        let pre = Subspace::preimage(&m, &line).unwrap();
        assert_eq!(pre, Subspace::from_columns(&f, 2, &[vec![0, 1]]));
    }
}
