//! Framed ADHM data `(X, Y, i, j)` over a prime field.
//!
//! Conventions: `X, Y : V -> V`, `i : W -> V`, `j : V -> W` with `dim V = n`,
//! `dim W = r`. The equation is `[X, Y] + ij = 0`. Stability is co-stability:
//! no nonzero subspace of `ker j` is invariant under both `X` and `Y`.
//!
//! The universal complex at `(x, y)` is `V -a-> V ⊕ V ⊕ W -b-> V` with
//! `a = [X - x; Y - y; j]` and `b = [-(Y - y), X - x, i]`; the minus sign on the
//! first block makes `b·a = [X, Y] + ij` vanish on solutions.

mod partition;
mod sampler;
mod witness;

pub use partition::{generator_count_oracle, partition_witness, Partition};
pub use sampler::{direct_sum, enumerate_stable, sample_stable, EnumerationStats, SampleError, SamplerConfig, Strategy};
pub use witness::{degeneracy_witness_search, SearchStage, StageTrace, WitnessConfig, WitnessOutcome, WitnessTrace};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexkit::{ComplexError, ThreeTermPoint};
use crate::exactlin::{Field, FieldSpec, FpMatrix, FpSubspace, LinalgError, PrimeField, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdhmError {
    #[error("datum does not satisfy [X,Y] + ij = 0")]
    NotSolution,
    #[error("datum is not stable")]
    Unstable,
    #[error("inconsistent shapes for n = {n}, r = {r}")]
    Shape { n: usize, r: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdhmDatum {
    pub n: usize,
    pub r: usize,
    pub x: FpMatrix,
    pub y: FpMatrix,
    pub i: FpMatrix,
    pub j: FpMatrix,
}

impl AdhmDatum {
    pub fn new(x: FpMatrix, y: FpMatrix, i: FpMatrix, j: FpMatrix) -> Result<Self, AdhmError> {
        let n = x.rows();
        let r = i.cols();
        let ok = x.shape() == (n, n) && y.shape() == (n, n) && i.shape() == (n, r) && j.shape() == (r, n);
        if !ok {
            return Err(AdhmError::Shape { n, r });
        }
        Ok(AdhmDatum { n, r, x, y, i, j })
    }

    pub fn zero(field: &PrimeField, n: usize, r: usize) -> Self {
        AdhmDatum {
            n,
            r,
            x: FpMatrix::zeros(field, n, n),
            y: FpMatrix::zeros(field, n, n),
            i: FpMatrix::zeros(field, n, r),
            j: FpMatrix::zeros(field, r, n),
        }
    }

    pub fn field(&self) -> &PrimeField {
        self.x.field()
    }

    /// `XY - YX + ij`.
    pub fn residual(&self) -> FpMatrix {
        let comm = self.x.dot(&self.y).sub(&self.y.dot(&self.x)).expect("square");
        comm.add(&self.i.dot(&self.j)).expect("n x n")
    }

    pub fn is_solution(&self) -> bool {
        self.residual().is_zero()
    }

    /// Largest subspace of `ker j` invariant under `X` and `Y`.
    pub fn destabilizing_subspace(&self) -> FpSubspace {
        let mut k = self.j.kernel_basis();
        loop {
            let next = k
                .intersect(&Subspace::preimage(&self.x, &k).expect("square"))
                .and_then(|s| s.intersect(&Subspace::preimage(&self.y, &k).expect("square")))
                .expect("same ambient space");
            if next.dim() == k.dim() {
                return k;
            }
            k = next;
        }
    }

    pub fn is_stable(&self) -> bool {
        self.destabilizing_subspace().is_zero()
    }

    /// `(X - x, Y - y, i, j)`: moves the point `(x, y)` to the origin.
    pub fn translate(&self, x: u64, y: u64) -> Self {
        AdhmDatum {
            x: self.x.shift_diagonal(&x),
            y: self.y.shift_diagonal(&y),
            ..self.clone()
        }
    }

    /// The two maps of the universal complex at `(x, y)`.
    pub fn complex_matrices(&self, x: u64, y: u64) -> (FpMatrix, FpMatrix) {
        let t = self.translate(x, y);
        let a = t.x.vstack(&t.y).and_then(|m| m.vstack(&t.j)).expect("n columns");
        let b = t.y.neg().hstack(&t.x).and_then(|m| m.hstack(&t.i)).expect("n rows");
        (a, b)
    }

    /// The universal three-term complex at `(x, y)`. Refused on non-solutions;
    /// on unstable data the first map may fail to be injective, which is
    /// reported by the complex constructor.
    pub fn universal_complex_at(&self, x: u64, y: u64) -> Result<ThreeTermPoint<PrimeField>, AdhmError> {
        if !self.is_solution() {
            return Err(AdhmError::NotSolution);
        }
        let (a, b) = self.complex_matrices(x, y);
        Ok(ThreeTermPoint::new(a, b)?)
    }

    pub fn h0_at(&self, x: u64, y: u64) -> Result<usize, AdhmError> {
        Ok(self.universal_complex_at(x, y)?.cohomology().0)
    }

    /// `dim ker dμ - n²`, where `dμ` is the linearized equation.
    pub fn tangent_dimension(&self) -> Result<usize, AdhmError> {
        if !self.is_solution() {
            return Err(AdhmError::NotSolution);
        }
        if !self.is_stable() {
            return Err(AdhmError::Unstable);
        }
        let (n, r) = (self.n, self.r);
        let f = self.field().clone();
        let shapes = [(n, n), (n, n), (n, r), (r, n)];
        let jac = linearization(&f, &shapes, n * n, |parts| {
            let (dx, dy, di, dj) = (&parts[0], &parts[1], &parts[2], &parts[3]);
            let t1 = dx.dot(&self.y).sub(&self.y.dot(dx)).expect("square");
            let t2 = self.x.dot(dy).sub(&dy.dot(&self.x)).expect("square");
            let t3 = di.dot(&self.j).add(&self.i.dot(dj)).expect("n x n");
            t1.add(&t2).and_then(|m| m.add(&t3)).expect("n x n").entries().to_vec()
        });
        let kernel = jac.cols() - jac.rank();
        Ok(kernel - n * n)
    }

    pub fn record(&self, seed: Option<u64>, strategy: &str) -> WitnessRecord {
        WitnessRecord {
            n: self.n,
            r: self.r,
            field: self.field().spec(),
            x: self.x.to_i64_rows(),
            y: self.y.to_i64_rows(),
            i: self.i.to_i64_rows(),
            j: self.j.to_i64_rows(),
            seed,
            strategy: strategy.to_string(),
        }
    }
}

/// Matrix of a linear map whose domain is a tuple of matrices of the given
/// shapes, built by evaluating `f` on each elementary tuple.
pub(crate) fn linearization(
    field: &PrimeField,
    shapes: &[(usize, usize)],
    out_dim: usize,
    f: impl Fn(&[FpMatrix]) -> Vec<u64>,
) -> FpMatrix {
    let domain: usize = shapes.iter().map(|(a, b)| a * b).sum();
    let mut columns = Vec::with_capacity(domain);
    for (block, &(rows, cols)) in shapes.iter().enumerate() {
        for idx in 0..rows * cols {
            let mut parts: Vec<FpMatrix> = shapes.iter().map(|&(a, b)| FpMatrix::zeros(field, a, b)).collect();
            parts[block].set(idx / cols, idx % cols, 1);
            columns.push(f(&parts));
        }
    }
    FpMatrix::from_columns(field, out_dim, &columns)
}

/// JSON form of a datum: dimensions, field, integer matrices, provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub n: usize,
    pub r: usize,
    pub field: FieldSpec,
    pub x: Vec<Vec<i64>>,
    pub y: Vec<Vec<i64>>,
    pub i: Vec<Vec<i64>>,
    pub j: Vec<Vec<i64>>,
    pub seed: Option<u64>,
    pub strategy: String,
}

impl WitnessRecord {
    pub fn to_datum(&self) -> Result<AdhmDatum, AdhmError> {
        let FieldSpec::Prime { p } = self.field else {
            return Err(AdhmError::Linalg(LinalgError::NotPrime(0)));
        };
        let f = PrimeField::new(p)?;
        let mat = |rows: &[Vec<i64>], r: usize, c: usize| -> Result<FpMatrix, AdhmError> {
            if rows.is_empty() {
                return Ok(FpMatrix::zeros(&f, r, c));
            }
            Ok(FpMatrix::from_i64_rows(&f, rows)?)
        };
        let (n, r) = (self.n, self.r);
        AdhmDatum::new(mat(&self.x, n, n)?, mat(&self.y, n, n)?, mat(&self.i, n, r)?, mat(&self.j, r, n)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn point_datum(f: &PrimeField) -> AdhmDatum {
        let mut d = AdhmDatum::zero(f, 1, 1);
        d.j.set(0, 0, 1);
        d
    }

    #[test]
    fn trivial_residuals() {
        let f = PrimeField::new(5).unwrap();
        let d = point_datum(&f);
        assert!(d.is_solution());
        assert!(AdhmDatum::zero(&f, 3, 2).is_solution());
    }

    #[test]
    fn stability_examples() {
        let f = f2();
        assert!(point_datum(&f).is_stable());
        assert!(!AdhmDatum::zero(&f, 1, 1).is_stable());
        assert!(AdhmDatum::zero(&f, 0, 2).is_stable());
    }

    #[test]
    fn complex_at_origin_and_off_origin() {
        let f = PrimeField::new(7).unwrap();
        let d = point_datum(&f);
        let at0 = d.universal_complex_at(0, 0).unwrap();
        assert_eq!(at0.first_map().to_i64_rows(), vec![vec![0], vec![0], vec![1]]);
        assert_eq!(at0.cohomology(), (2, 1));
        let at1 = d.universal_complex_at(1, 0).unwrap();
        assert_eq!(at1.cohomology(), (1, 0));
    }

    #[test]
    fn empty_datum_complex() {
        let f = f2();
        let d = AdhmDatum::zero(&f, 0, 3);
        assert_eq!(d.universal_complex_at(0, 0).unwrap().cohomology(), (3, 0));
        assert_eq!(d.tangent_dimension().unwrap(), 0);
    }

    #[test]
    fn tangent_dimension_of_point_datum() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(point_datum(&f).tangent_dimension().unwrap(), 2);
        assert_eq!(AdhmDatum::zero(&f, 1, 1).tangent_dimension().unwrap_err(), AdhmError::Unstable);
    }

    #[test]
    fn non_solution_refused() {
        let f = PrimeField::new(3).unwrap();
        let mut d = point_datum(&f);
        d.i.set(0, 0, 1);
        assert_eq!(d.universal_complex_at(0, 0).unwrap_err(), AdhmError::NotSolution);
    }

    #[test]
    fn record_round_trip() {
        let f = PrimeField::new(101).unwrap();
        let d = point_datum(&f);
        let rec = d.record(Some(9), "partition");
        let json = serde_json::to_string(&rec).unwrap();
        let back: WitnessRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_datum().unwrap(), d);
    }
}
