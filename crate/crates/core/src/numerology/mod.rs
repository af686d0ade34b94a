//! Dimension formulas and non-emptiness criteria, all in exact integers.

mod blowup;

pub use blowup::{BlowupClass, BlowupError, Lattice, SurfaceClass};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Expected codimension of the level-`k` degeneracy locus of a rank-`e` complex.
/// Levels `k <= 0` impose no condition.
pub fn expected_codim(k: i64, e: i64) -> i64 {
    if k <= 0 {
        return 0;
    }
    (k * (k - e)).max(0)
}

/// Virtual dimension of the incidence variety over a base of dimension `dim_x`.
pub fn vdim_inc(dim_x: i64, e: i64, d_plus: i64, d_minus: i64) -> i64 {
    let v = dim_x - d_plus * (d_plus - e) + d_minus * (d_plus - d_minus - e);
    if e == 1 {
        debug_assert_eq!(v, d0_formula(dim_x, d_plus, d_minus));
    }
    v
}

/// The closed form quoted for the degree of the virtual class of incidence
/// varieties. It agrees with [`vdim_inc`] exactly when `e = 1`.
pub fn d0_formula(dim_x: i64, d_plus: i64, d_minus: i64) -> i64 {
    dim_x + (1 - d_plus) * d_plus - (d_minus + 1) * d_minus + d_minus * d_plus
}

/// Virtual dimension of the Grassmannian of rank-`d` quotients.
pub fn vdim_grassmannian(dim_x: i64, e: i64, d: i64) -> i64 {
    dim_x - d * (d - e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionInput {
    pub constant: i64,
    pub theta0: i64,
    pub r: i64,
    pub n: i64,
    pub l: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerologyError {
    #[error("rank r must be positive, got {0}")]
    NonPositiveRank(i64),
    #[error("l must be non-negative, got {0}")]
    NegativeLevel(i64),
    #[error("induction step needs l >= r (l = {l}, r = {r})")]
    LevelBelowRank { l: i64, r: i64 },
    #[error("unknown surface kind {0:?}")]
    UnknownSurface(String),
}

impl CriterionInput {
    pub fn framed(r: i64, n: i64, l: i64) -> Self {
        CriterionInput { constant: 0, theta0: 0, r, n, l }
    }

    pub fn remainder(&self) -> i64 {
        self.l.rem_euclid(self.r)
    }

    /// `const + 2rn + l(r - l) - t(r - t)`.
    pub fn value(&self) -> i64 {
        let t = self.remainder();
        self.constant + 2 * self.r * self.n + self.l * (self.r - self.l) - t * (self.r - t)
    }

    fn validate(&self) -> Result<(), NumerologyError> {
        if self.r < 1 {
            return Err(NumerologyError::NonPositiveRank(self.r));
        }
        if self.l < 0 {
            return Err(NumerologyError::NegativeLevel(self.l));
        }
        Ok(())
    }
}

pub fn criterion_nonempty(c: &CriterionInput) -> Result<bool, NumerologyError> {
    c.validate()?;
    Ok(c.value() >= c.theta0)
}

/// Checks the algebra of the induction step `l -> l - r`:
/// `const + 2r(m - l + r) + (l - r)(2r - l) - t(r - t)` equals
/// `const + 2rm + l(r - l) - t(r - t)`.
pub fn criterion_induction_check(constant: i64, r: i64, m: i64, l: i64) -> Result<bool, NumerologyError> {
    if r < 1 {
        return Err(NumerologyError::NonPositiveRank(r));
    }
    if l < r {
        return Err(NumerologyError::LevelBelowRank { l, r });
    }
    let t = l.rem_euclid(r);
    let stepped = constant + 2 * r * (m - l + r) + (l - r) * (2 * r - l) - t * (r - t);
    let direct = constant + 2 * r * m + l * (r - l) - t * (r - t);
    Ok(stepped == direct)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceKind {
    K3Generic,
    Abelian,
    FramedPlane,
    Custom { theta0: i64 },
}

impl std::str::FromStr for SurfaceKind {
    type Err = NumerologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "k3" | "k3_generic" | "K3_generic" => Ok(SurfaceKind::K3Generic),
            "abelian" => Ok(SurfaceKind::Abelian),
            "framed_plane" => Ok(SurfaceKind::FramedPlane),
            other => other
                .strip_prefix("custom(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|v| v.trim().parse().ok())
                .map(|theta0| SurfaceKind::Custom { theta0 })
                .ok_or_else(|| NumerologyError::UnknownSurface(other.to_string())),
        }
    }
}

/// `(θ₀, θ)`: the base threshold and the threshold for degeneracy loci.
/// Moduli of sheaves on a surface shift by 2; the framed plane has no shift.
pub fn theta_table(kind: SurfaceKind) -> (i64, i64) {
    match kind {
        SurfaceKind::K3Generic => (0, 2),
        SurfaceKind::Abelian => (2, 4),
        SurfaceKind::FramedPlane => (0, 0),
        SurfaceKind::Custom { theta0 } => (theta0, theta0 + 2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDimensions {
    /// `const + 2rn - r(l + r)`.
    pub quoted: i64,
    /// `const + 2rn - l(l + r)`, from the blow-up quiver dimension formula with
    /// `n1 = n`, `n2 = n - l`.
    pub derived: i64,
    pub disagree: bool,
}

pub fn m0_expected_dimension(constant: i64, r: i64, n: i64, l: i64) -> ExpectedDimensions {
    let quoted = constant + 2 * r * n - r * (l + r);
    let derived = constant + perverse_dimension(n, n - l, r);
    ExpectedDimensions { quoted, derived, disagree: quoted != derived }
}

/// `2 n1 n2 - n1² - n2² + (n1 + n2) r`.
pub fn perverse_dimension(n1: i64, n2: i64, r: i64) -> i64 {
    2 * n1 * n2 - n1 * n1 - n2 * n2 + (n1 + n2) * r
}

/// Largest number of generators of a colength-`n` monomial ideal in two
/// variables: `⌊(1 + √(1 + 8n)) / 2⌋`, computed with an integer square root.
pub fn max_generators(n: u64) -> u64 {
    let disc = 1 + 8 * n;
    let mut root = (disc as f64).sqrt() as u64;
    while root * root > disc {
        root -= 1;
    }
    while (root + 1) * (root + 1) <= disc {
        root += 1;
    }
    (1 + root) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codimension_values() {
        assert_eq!(expected_codim(0, 3), 0);
        assert_eq!(expected_codim(-2, 0), 0);
        assert_eq!(expected_codim(1, 0), 1);
        assert_eq!(expected_codim(3, 1), 6);
    }

    #[test]
    fn incidence_dimension_values() {
        assert_eq!(vdim_inc(7, 2, 0, 0), 7);
        assert_eq!(vdim_inc(4, 1, 1, 0), 4);
        assert_eq!(d0_formula(4, 1, 0), 4);
        assert_eq!(vdim_inc(9, 0, 2, 2), 9 - 4);
    }

    #[test]
    fn d0_agrees_only_for_rank_one() {
        for d_plus in 0..5 {
            for d_minus in 0..5 {
                assert_eq!(vdim_inc(10, 1, d_plus, d_minus), d0_formula(10, d_plus, d_minus));
            }
        }
        assert_ne!(vdim_inc(10, 0, 2, 0), d0_formula(10, 2, 0));
    }

    #[test]
    fn framed_criterion_examples() {
        assert!(criterion_nonempty(&CriterionInput::framed(1, 3, 3)).unwrap());
        assert_eq!(CriterionInput::framed(1, 3, 3).value(), 0);
        assert!(!criterion_nonempty(&CriterionInput::framed(1, 3, 4)).unwrap());
        assert_eq!(CriterionInput::framed(1, 3, 4).value(), -6);
        let c = CriterionInput { constant: 5, theta0: 3, r: 2, n: 1, l: 2 };
        assert_eq!(c.value(), 5 + 4);
        assert!(criterion_nonempty(&CriterionInput::framed(0, 1, 1)).is_err());
    }

    #[test]
    fn induction_identity_instances() {
        assert!(criterion_induction_check(0, 2, 3, 5).unwrap());
        assert!(criterion_induction_check(7, 3, -4, 3).unwrap());
        assert!(criterion_induction_check(0, 3, 0, 2).is_err());
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta_table(SurfaceKind::K3Generic), (0, 2));
        assert_eq!(theta_table(SurfaceKind::Abelian), (2, 4));
        assert_eq!(theta_table(SurfaceKind::Custom { theta0: 5 }), (5, 7));
        assert_eq!("custom(5)".parse::<SurfaceKind>().unwrap(), SurfaceKind::Custom { theta0: 5 });
        assert!("enriques".parse::<SurfaceKind>().is_err());
    }

    #[test]
    fn m0_dimension_bookkeeping() {
        let same = m0_expected_dimension(3, 2, 4, 2);
        assert_eq!(same.quoted, same.derived);
        assert!(!same.disagree);
        let zero = m0_expected_dimension(0, 2, 3, 0);
        assert_eq!((zero.quoted, zero.derived), (12 - 4, 12));
        assert!(zero.disagree);
        let small = m0_expected_dimension(0, 1, 2, 1);
        assert_eq!((small.quoted, small.derived), (2, 2));
    }

    #[test]
    fn generator_maxima() {
        let expected = [1, 2, 2, 3, 3, 3, 4, 4, 4];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(max_generators(n as u64), *e);
        }
    }
}
