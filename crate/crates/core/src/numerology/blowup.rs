//! Rational cohomology classes on a surface and its one-point blow-up,
//! truncated at degree 4.
//!
//! `H*(Ŝ) = p*H*(S) ⊕ Q[C]` with `[C]² = -1` and `[C]·p*D = 0`. Pushforward
//! `p_!` is the linear map fixed by `p_!p* = id` and `p_![C] = ½[pt]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("gram matrix must be square and symmetric")]
    BadGram,
    #[error("divisor has {got} coordinates, lattice has rank {expected}")]
    GramMismatch { expected: usize, got: usize },
}

/// `H²(S, Z)` modulo torsion, given by its intersection form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Lattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, BlowupError> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) || (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
            return Err(BlowupError::BadGram);
        }
        Ok(Lattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    fn check(&self, v: &[BigRational]) -> Result<(), BlowupError> {
        if v.len() != self.rank() {
            return Err(BlowupError::GramMismatch { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    pub fn pair(&self, a: &[BigRational], b: &[BigRational]) -> Result<BigRational, BlowupError> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = BigRational::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                acc += ai * bj * q(self.gram[i][j]);
            }
        }
        Ok(acc)
    }
}

/// `rank·[S] + c1 + point·[pt]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceClass {
    pub rank: BigRational,
    pub c1: Vec<BigRational>,
    pub point: BigRational,
}

/// `rank·[Ŝ] + p*c1 + exceptional·[C] + point·[pt]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupClass {
    pub rank: BigRational,
    pub c1_pullback: Vec<BigRational>,
    pub exceptional: BigRational,
    pub point: BigRational,
}

impl SurfaceClass {
    /// `ch(c) = r + c1 + ½c1² - n`.
    pub fn chern_character(lattice: &Lattice, r: i64, c1: &[i64], n: i64) -> Result<Self, BlowupError> {
        let c1: Vec<BigRational> = c1.iter().map(|&v| q(v)).collect();
        let square = lattice.pair(&c1, &c1)?;
        Ok(SurfaceClass { rank: q(r), c1, point: square / q(2) - q(n) })
    }

    pub fn pullback(&self) -> BlowupClass {
        BlowupClass {
            rank: self.rank.clone(),
            c1_pullback: self.c1.clone(),
            exceptional: BigRational::zero(),
            point: self.point.clone(),
        }
    }
}

impl BlowupClass {
    /// `[C]`.
    pub fn exceptional_curve(lattice_rank: usize) -> Self {
        BlowupClass {
            rank: BigRational::zero(),
            c1_pullback: vec![BigRational::zero(); lattice_rank],
            exceptional: q(1),
            point: BigRational::zero(),
        }
    }

    /// `[pt]`.
    pub fn point_class(lattice_rank: usize) -> Self {
        BlowupClass {
            rank: BigRational::zero(),
            c1_pullback: vec![BigRational::zero(); lattice_rank],
            exceptional: BigRational::zero(),
            point: q(1),
        }
    }

    /// `[Ŝ]`.
    pub fn fundamental(lattice_rank: usize) -> Self {
        BlowupClass {
            rank: q(1),
            c1_pullback: vec![BigRational::zero(); lattice_rank],
            exceptional: BigRational::zero(),
            point: BigRational::zero(),
        }
    }

    pub fn push_forward(&self, lattice: &Lattice) -> Result<SurfaceClass, BlowupError> {
        lattice.check(&self.c1_pullback)?;
        Ok(SurfaceClass {
            rank: self.rank.clone(),
            c1: self.c1_pullback.clone(),
            point: &self.point + &self.exceptional / q(2),
        })
    }

    /// Intersection of the degree-2 parts.
    pub fn divisor_pairing(&self, other: &Self, lattice: &Lattice) -> Result<BigRational, BlowupError> {
        Ok(lattice.pair(&self.c1_pullback, &other.c1_pullback)? - &self.exceptional * &other.exceptional)
    }

    /// `v_d = p*ch(c) - d·ch(O_C(-1)) = p*ch(c) - d([C] - ½[pt])`.
    pub fn v_d(ch: &SurfaceClass, d: i64) -> Self {
        let mut v = ch.pullback();
        v.exceptional -= q(d);
        v.point += q(d) / q(2);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbolic() -> Lattice {
        Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn displayed_pushforward_values() {
        let l = hyperbolic();
        let c = BlowupClass::exceptional_curve(2).push_forward(&l).unwrap();
        assert_eq!(c.point, BigRational::new(1.into(), 2.into()));
        assert_eq!(c.rank, BigRational::zero());
        let s = BlowupClass::fundamental(2).push_forward(&l).unwrap();
        assert_eq!(s.rank, q(1));
        let pt = BlowupClass::point_class(2).push_forward(&l).unwrap();
        assert_eq!(pt.point, q(1));
    }

    #[test]
    fn exceptional_self_intersection() {
        let l = hyperbolic();
        let c = BlowupClass::exceptional_curve(2);
        assert_eq!(c.divisor_pairing(&c, &l).unwrap(), q(-1));
    }

    #[test]
    fn chern_character_of_zero_divisor() {
        let l = hyperbolic();
        let ch = SurfaceClass::chern_character(&l, 2, &[0, 0], 3).unwrap();
        assert_eq!((ch.rank.clone(), ch.point.clone()), (q(2), q(-3)));
        let ch = SurfaceClass::chern_character(&l, 1, &[1, 1], 0).unwrap();
        assert_eq!(ch.point, q(1));
    }

    #[test]
    fn v_d_pushes_forward_to_ch() {
        let l = hyperbolic();
        let ch = SurfaceClass::chern_character(&l, 2, &[1, 0], 5).unwrap();
        let v = BlowupClass::v_d(&ch, 3);
        assert_eq!(v.exceptional, q(-3));
        // p_! kills the O_C(-1) correction: -d(½ - ½) = 0
        assert_eq!(v.push_forward(&l).unwrap(), ch);
    }

    #[test]
    fn gram_validation() {
        assert_eq!(Lattice::new(vec![vec![1, 2], vec![3, 1]]).unwrap_err(), BlowupError::BadGram);
        let l = hyperbolic();
        assert!(SurfaceClass::chern_character(&l, 1, &[1], 0).is_err());
    }
}
