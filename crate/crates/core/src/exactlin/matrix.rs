//! Dense row-major matrices with exact entries.

use super::field::{Field, PrimeField};
use super::subspace::Subspace;
use super::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for k in 0..n {
            m.data[k * n + k] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from integer rows, reducing every entry into the field.
    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::RaggedRows);
        }
        Ok(Self::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c])))
    }

    /// Wraps already-reduced entries.
    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for internal code whose shapes are fixed by construction.
    pub fn dot(&self, other: &Self) -> Self {
        self.mul(other).expect("matrix shapes checked by caller")
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(f.zero(), |acc, c| f.add(&acc, &f.mul(self.get(r, c), &v[c])))
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, op: &'static str, g: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Result<Self, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| g(&self.field, a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "add", |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "sub", |f, a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self - s·I` for square matrices.
    pub fn shift_diagonal(&self, s: &F::Elem) -> Self {
        assert_eq!(self.rows, self.cols, "shift_diagonal needs a square matrix");
        let mut out = self.clone();
        for k in 0..self.rows {
            let idx = k * self.cols + k;
            out.data[idx] = self.field.sub(&out.data[idx], s);
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch { op: "hstack", left: self.shape(), right: other.shape() });
        }
        Ok(Self::from_fn(&self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch { op: "vstack", left: self.shape(), right: other.shape() });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(&self.field, self.rows + other.rows, self.cols + other.cols, |r, c| {
            match (r < self.rows, c < self.cols) {
                (true, true) => self.get(r, c).clone(),
                (false, false) => other.get(r - self.rows, c - self.cols).clone(),
                _ => self.field.zero(),
            }
        })
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let candidate = (row..m.rows)
                .filter(|&r| !f.is_zero(m.get(r, col)))
                .min_by_key(|&r| f.pivot_weight(m.get(r, col)));
            let Some(p) = candidate else { continue };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let sub = f.mul(&factor, m.get(row, c));
                    let idx = r * m.cols + c;
                    m.data[idx] = f.sub(&m.data[idx], &sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{v : Mv = 0}` in canonical form.
    pub fn kernel_basis(&self) -> Subspace<F> {
        let f = &self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors: Vec<Vec<F::Elem>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(reduced.get(k, fc));
                }
                v
            })
            .collect();
        Subspace::from_columns(f, self.cols, &vectors)
    }

    /// Basis of the column space in canonical form.
    pub fn image_basis(&self) -> Subspace<F> {
        Subspace::span(self)
    }

    /// `M = A·B` with inner dimension `rank(M)`: `A` holds the pivot columns of
    /// `M` and `B` the nonzero rows of its reduced echelon form.
    pub fn rank_factorization(&self) -> (Self, Self) {
        let Echelon { reduced, pivots } = self.echelon();
        let k = pivots.len();
        let a = self.select_columns(&pivots);
        let b = reduced.select_rows(&(0..k).collect::<Vec<_>>());
        (a, b)
    }
}

impl Matrix<PrimeField> {
    /// Entries as integers in `0..p`, row by row.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| *self.get(r, c) as i64).collect())
            .collect()
    }
}

/// In-place rank of a row-major residue buffer. Used by the enumeration loops,
/// which cannot afford an allocation per matrix.
pub fn rank_mod_p(buf: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    debug_assert_eq!(buf.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| buf[r * cols + col] != 0) else { continue };
        if piv != rank {
            for c in 0..cols {
                buf.swap(piv * cols + c, rank * cols + c);
            }
        }
        let inv = inv_mod(buf[rank * cols + col], p);
        for r in rank + 1..rows {
            let factor = buf[r * cols + col] * inv % p;
            if factor == 0 {
                continue;
            }
            for c in col..cols {
                let sub = factor * buf[rank * cols + c] % p;
                buf[r * cols + c] = (buf[r * cols + c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::identity(&f2(), 2).rank(), 2);
    }

    #[test]
    fn duplicated_row_rank() {
        let m = Matrix::from_i64_rows(&f2(), &[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn zero_matrix_kernel_and_image() {
        let m = Matrix::zeros(&f2(), 2, 3);
        assert_eq!(m.kernel_basis().dim(), 3);
        assert_eq!(m.image_basis().dim(), 0);
        assert_eq!(Matrix::identity(&f2(), 3).kernel_basis().dim(), 0);
    }

    #[test]
    fn rank_factorization_edge_cases() {
        let f = PrimeField::new(7).unwrap();
        let z = Matrix::zeros(&f, 3, 2);
        let (a, b) = z.rank_factorization();
        assert_eq!((a.cols(), b.rows()), (0, 0));
        assert_eq!(a.dot(&b), z);
        let id = Matrix::identity(&f, 3);
        let (a, b) = id.rank_factorization();
        assert_eq!(a.cols(), 3);
        assert_eq!(a.dot(&b), id);
    }

    #[test]
    fn rational_elimination_is_exact() {
        let q = Rationals;
        let m = Matrix::from_i64_rows(&q, &[vec![2, 4, 6], vec![1, 3, 5], vec![3, 7, 11]]).unwrap();
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        let v = k.basis().column(0);
        assert!(m.apply(&v).iter().all(|e| q.is_zero(e)));
    }

    #[test]
    fn shape_errors() {
        let f = f2();
        let a = Matrix::zeros(&f, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&Matrix::zeros(&f, 3, 2)).is_err());
        assert!(Matrix::from_i64_rows(&f, &[vec![1], vec![1, 0]]).is_err());
    }

    #[test]
    fn fast_rank_agrees_with_echelon() {
        let f = PrimeField::new(3).unwrap();
        for code in 0..3u64.pow(6) {
            let mut digits = Vec::new();
            let mut c = code;
            for _ in 0..6 {
                digits.push(c % 3);
                c /= 3;
            }
            let m = Matrix::from_vec(&f, 2, 3, digits.clone()).unwrap();
            assert_eq!(rank_mod_p(&mut digits, 2, 3, 3), m.rank());
        }
    }
}
