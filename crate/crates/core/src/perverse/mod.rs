//! Blow-up quiver data `(B₁, B₂, d, i, j)` over a prime field.
//!
//! Types: `B₁, B₂ : V₁ -> V₂` (`n₂ × n₁`), `d : V₂ -> V₁` (`n₁ × n₂`),
//! `i : W -> V₁` (`n₁ × r`), `j : V₂ -> W` (`r × n₂`). The equation, stability
//! predicate and projection framings are selected from [`catalog`].

mod catalog;
mod search;

pub use catalog::{
    catalog, catalog_table, ConventionId, EquationForm, EtaI, EtaJ, StabilityForm, ZetaI, ZetaJ, CATALOG_TABLE_V1,
    CATALOG_VERSION,
};
pub use search::{
    bookkeeping_check, convention_search, enumerate_perverse_stable, gauge_factor, grassmannian_benchmark,
    zeta_fiber_count, BookkeepingReport, CriterionVerdict, EntryVerdict, SearchOptions, SearchOutcome, SearchReport,
};

use thiserror::Error;

use crate::adhm::{linearization, AdhmDatum};
use crate::exactlin::{FpMatrix, FpSubspace, PrimeField, Subspace};
use crate::numerology::perverse_dimension;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerverseError {
    #[error("datum does not satisfy the {0:?} equation")]
    NotSolution(EquationForm),
    #[error("datum is not stable under {0:?}")]
    Unstable(StabilityForm),
    #[error("d is not injective")]
    NotInjective,
    #[error("{projection} output violates {what} under convention {convention}")]
    ConventionViolation { projection: &'static str, what: &'static str, convention: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerverseDatum {
    pub n1: usize,
    pub n2: usize,
    pub r: usize,
    pub b1: FpMatrix,
    pub b2: FpMatrix,
    pub d: FpMatrix,
    pub i: FpMatrix,
    pub j: FpMatrix,
}

impl PerverseDatum {
    pub fn zero(field: &PrimeField, n1: usize, n2: usize, r: usize) -> Self {
        PerverseDatum {
            n1,
            n2,
            r,
            b1: FpMatrix::zeros(field, n2, n1),
            b2: FpMatrix::zeros(field, n2, n1),
            d: FpMatrix::zeros(field, n1, n2),
            i: FpMatrix::zeros(field, n1, r),
            j: FpMatrix::zeros(field, r, n2),
        }
    }

    pub fn field(&self) -> &PrimeField {
        self.d.field()
    }

    /// Odometer decoding of `index` in base `q`, in the order `B₁, B₂, d, i, j`.
    pub fn decode(field: &PrimeField, n1: usize, n2: usize, r: usize, mut index: u128) -> Self {
        let q = field.modulus() as u128;
        let mut next = |rows: usize, cols: usize| {
            FpMatrix::from_fn(field, rows, cols, |_, _| {
                let v = (index % q) as u64;
                index /= q;
                v
            })
        };
        let b1 = next(n2, n1);
        let b2 = next(n2, n1);
        let d = next(n1, n2);
        let i = next(n1, r);
        let j = next(r, n2);
        PerverseDatum { n1, n2, r, b1, b2, d, i, j }
    }

    /// Number of entries of a datum of this size.
    pub fn entry_count(n1: usize, n2: usize, r: usize) -> usize {
        3 * n1 * n2 + r * (n1 + n2)
    }

    /// The left-hand side of the selected equation, `n₂ × n₁`.
    pub fn residual(&self, form: EquationForm) -> FpMatrix {
        let core = self.b1.dot(&self.d).dot(&self.b2).sub(&self.b2.dot(&self.d).dot(&self.b1)).expect("n2 x n1");
        let framing = self.j.transpose().dot(&self.i.transpose());
        match form {
            EquationForm::Literal => core,
            EquationForm::FramedTransposePlus => core.add(&framing).expect("n2 x n1"),
            EquationForm::FramedTransposeMinus => core.sub(&framing).expect("n2 x n1"),
        }
    }

    pub fn is_solution(&self, form: EquationForm) -> bool {
        self.residual(form).is_zero()
    }

    /// Largest pair `(S₁, S₂)` satisfying the constraint of `form` with
    /// `B_α(S₁) ⊆ S₂` and `d(S₂) ⊆ S₁`.
    pub fn destabilizing_pair(&self, form: StabilityForm) -> (FpSubspace, FpSubspace) {
        let f = self.field();
        let (mut s1, mut s2) = match form {
            StabilityForm::Literal => (Subspace::full(f, self.n1), self.j.kernel_basis()),
            StabilityForm::CoFramed | StabilityForm::CoFramedStrict => {
                (self.i.transpose().kernel_basis(), Subspace::full(f, self.n2))
            }
        };
        loop {
            let next2 = s2.intersect(&Subspace::preimage(&self.d, &s1).expect("d: V2 -> V1")).expect("V2");
            let next1 = s1
                .intersect(&Subspace::preimage(&self.b1, &next2).expect("B1: V1 -> V2"))
                .and_then(|s| s.intersect(&Subspace::preimage(&self.b2, &next2).expect("B2: V1 -> V2")))
                .expect("V1");
            if next1.dim() == s1.dim() && next2.dim() == s2.dim() {
                return (s1, s2);
            }
            s1 = next1;
            s2 = next2;
        }
    }

    pub fn is_stable(&self, form: StabilityForm) -> bool {
        let (s1, s2) = self.destabilizing_pair(form);
        match form {
            StabilityForm::Literal | StabilityForm::CoFramed => s1.is_zero(),
            StabilityForm::CoFramedStrict => s1.is_zero() && s2.is_zero(),
        }
    }

    pub fn d_injective(&self) -> bool {
        self.d.rank() == self.n2
    }

    fn check_pre(&self, conv: &ConventionId) -> Result<(), PerverseError> {
        if !self.is_solution(conv.equation) {
            return Err(PerverseError::NotSolution(conv.equation));
        }
        if !self.is_stable(conv.stability) {
            return Err(PerverseError::Unstable(conv.stability));
        }
        if !self.d_injective() {
            return Err(PerverseError::NotInjective);
        }
        Ok(())
    }

    /// ζ without pre- or postcondition checks.
    pub fn zeta_raw(&self, conv: &ConventionId) -> AdhmDatum {
        let i = match conv.zeta.0 {
            ZetaI::I => self.i.clone(),
            ZetaI::DJt => self.d.dot(&self.j.transpose()),
        };
        let j = match conv.zeta.1 {
            ZetaJ::JB1 => self.j.dot(&self.b1),
            ZetaJ::JB2 => self.j.dot(&self.b2),
            ZetaJ::It => self.i.transpose(),
        };
        AdhmDatum { n: self.n1, r: self.r, x: self.d.dot(&self.b1), y: self.d.dot(&self.b2), i, j }
    }

    /// η without pre- or postcondition checks.
    pub fn eta_raw(&self, conv: &ConventionId) -> AdhmDatum {
        let i = match conv.eta.0 {
            EtaI::B1I => self.b1.dot(&self.i),
            EtaI::B2I => self.b2.dot(&self.i),
            EtaI::Jt => self.j.transpose(),
        };
        let j = match conv.eta.1 {
            EtaJ::J => self.j.clone(),
            EtaJ::ItD => self.i.transpose().dot(&self.d),
        };
        AdhmDatum { n: self.n2, r: self.r, x: self.b1.dot(&self.d), y: self.b2.dot(&self.d), i, j }
    }

    pub fn zeta(&self, conv: &ConventionId) -> Result<AdhmDatum, PerverseError> {
        self.check_pre(conv)?;
        check_post(self.zeta_raw(conv), "zeta", conv)
    }

    pub fn eta(&self, conv: &ConventionId) -> Result<AdhmDatum, PerverseError> {
        self.check_pre(conv)?;
        check_post(self.eta_raw(conv), "eta", conv)
    }

    /// `dim ker(linearized equation) - (n₁² + n₂²)`; may be negative when the
    /// linearization is not surjective at a degenerate point.
    pub fn tangent_dimension(&self, conv: &ConventionId) -> Result<i64, PerverseError> {
        if !self.is_solution(conv.equation) {
            return Err(PerverseError::NotSolution(conv.equation));
        }
        if !self.is_stable(conv.stability) {
            return Err(PerverseError::Unstable(conv.stability));
        }
        let (n1, n2, r) = (self.n1, self.n2, self.r);
        let shapes = [(n2, n1), (n2, n1), (n1, n2), (n1, r), (r, n2)];
        let form = conv.equation;
        let jac = linearization(self.field(), &shapes, n2 * n1, |parts| {
            let (db1, db2, dd, di, dj) = (&parts[0], &parts[1], &parts[2], &parts[3], &parts[4]);
            let (b1, b2, d) = (&self.b1, &self.b2, &self.d);
            // product rule on B1 d B2 - B2 d B1
            let terms = [
                db1.dot(d).dot(b2),
                b1.dot(dd).dot(b2),
                b1.dot(d).dot(db2),
            ];
            let neg_terms = [db2.dot(d).dot(b1), b2.dot(dd).dot(b1), b2.dot(d).dot(db1)];
            let mut acc = FpMatrix::zeros(self.field(), n2, n1);
            for t in &terms {
                acc = acc.add(t).expect("n2 x n1");
            }
            for t in &neg_terms {
                acc = acc.sub(t).expect("n2 x n1");
            }
            let framing = dj.transpose().dot(&self.i.transpose()).add(&self.j.transpose().dot(&di.transpose())).expect("n2 x n1");
            acc = match form {
                EquationForm::Literal => acc,
                EquationForm::FramedTransposePlus => acc.add(&framing).expect("n2 x n1"),
                EquationForm::FramedTransposeMinus => acc.sub(&framing).expect("n2 x n1"),
            };
            acc.entries().to_vec()
        });
        let kernel = (jac.cols() - jac.rank()) as i64;
        Ok(kernel - (n1 * n1 + n2 * n2) as i64)
    }

    /// `2n₁n₂ - n₁² - n₂² + (n₁ + n₂)r`.
    pub fn expected_dimension(&self) -> i64 {
        perverse_dimension(self.n1 as i64, self.n2 as i64, self.r as i64)
    }
}

fn check_post(out: AdhmDatum, projection: &'static str, conv: &ConventionId) -> Result<AdhmDatum, PerverseError> {
    let violation = |what| PerverseError::ConventionViolation { projection, what, convention: conv.label() };
    if !out.is_solution() {
        return Err(violation("the framed ADHM equation"));
    }
    if !out.is_stable() {
        return Err(violation("stability"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expected_survivor() -> ConventionId {
        ConventionId {
            equation: EquationForm::FramedTransposePlus,
            stability: StabilityForm::CoFramedStrict,
            zeta: (ZetaI::DJt, ZetaJ::It),
            eta: (EtaI::Jt, EtaJ::ItD),
        }
    }

    #[test]
    fn trivial_residuals() {
        let f = PrimeField::new(3).unwrap();
        let z = PerverseDatum::zero(&f, 2, 1, 1);
        for form in EquationForm::all() {
            assert!(z.is_solution(form));
        }
        assert_eq!(PerverseDatum::zero(&f, 2, 0, 1).residual(EquationForm::Literal).shape(), (0, 2));
        let mut p = PerverseDatum::decode(&f, 2, 1, 1, 12345);
        p.b2 = p.b1.clone();
        assert!(p.is_solution(EquationForm::Literal));
    }

    #[test]
    fn empty_datum_is_stable_everywhere() {
        let f = PrimeField::new(2).unwrap();
        let z = PerverseDatum::zero(&f, 0, 0, 2);
        for form in StabilityForm::all() {
            assert!(z.is_stable(form));
        }
        assert!(z.d_injective());
    }

    #[test]
    fn literal_stability_empties_n2_zero() {
        let f = PrimeField::new(3).unwrap();
        let mut p = PerverseDatum::zero(&f, 1, 0, 1);
        p.i.set(0, 0, 1);
        assert!(!p.is_stable(StabilityForm::Literal));
        assert!(p.is_stable(StabilityForm::CoFramed));
    }

    #[test]
    fn projections_of_square_case() {
        let f = PrimeField::new(5).unwrap();
        let conv = expected_survivor();
        let mut p = PerverseDatum::zero(&f, 1, 1, 1);
        p.d.set(0, 0, 2);
        p.i.set(0, 0, 1);
        assert!(p.is_solution(conv.equation) && p.is_stable(conv.stability));
        let z = p.zeta(&conv).unwrap();
        let e = p.eta(&conv).unwrap();
        assert_eq!(z.h0_at(0, 0).unwrap(), e.h0_at(0, 0).unwrap());
        assert_eq!(p.tangent_dimension(&conv).unwrap(), p.expected_dimension());
    }

    #[test]
    fn bad_framing_reports_violation() {
        let f = PrimeField::new(3).unwrap();
        let conv = ConventionId { zeta: (ZetaI::DJt, ZetaJ::JB1), ..expected_survivor() };
        let mut p = PerverseDatum::zero(&f, 1, 0, 1);
        p.i.set(0, 0, 1);
        assert!(matches!(p.zeta(&conv), Err(PerverseError::ConventionViolation { projection: "zeta", .. })));
        assert_eq!(p.eta(&conv).unwrap().n, 0);
    }
}
