//! Count polynomials: exact Lagrange interpolation of point counts in `q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need at least 2 support points, got {0}")]
    TooFewPoints(usize),
    #[error("support point q = {0} repeated")]
    DuplicateSupport(u64),
    #[error("q = {0} is not prime")]
    NotPrime(u64),
    #[error("non-polynomial or insufficient support: held-out q = {q} has count {observed}, polynomial predicts {predicted}")]
    HeldOutMismatch { q: u64, observed: u128, predicted: String },
}

/// Polynomial in `q` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPolynomial {
    coefficients: Vec<BigRational>,
    support: Vec<(u64, u128)>,
    held_out: Vec<(u64, u128)>,
}

fn rat(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

impl CountPolynomial {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn support(&self) -> &[(u64, u128)] {
        &self.support
    }

    pub fn held_out(&self) -> &[(u64, u128)] {
        &self.held_out
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coefficients.last()
    }

    /// Degree and leading coefficient; equal leading terms mean equal
    /// dimension and equal number of top-dimensional components (heuristically).
    pub fn leading_term(&self) -> Option<(usize, BigRational)> {
        Some((self.degree()?, self.leading_coefficient()?.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// True when the degree used every available support point, so the held-out
    /// check is the only guard against a wrong degree.
    pub fn saturated(&self) -> bool {
        self.degree().is_some_and(|d| d + 1 == self.support.len())
    }

    pub fn eval(&self, q: u64) -> BigRational {
        let x = rat(q as i128);
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }

    /// `"a/b"` strings, or plain integers when the denominator is 1.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(|c| c.to_string()).collect()
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "q".into(),
                (1, false) => format!("{mag}q"),
                (_, true) => format!("q^{k}"),
                (_, false) => format!("{mag}q^{k}"),
            };
            terms.push((sign, body));
        }
        let mut out = String::new();
        for (i, (sign, body)) in terms.into_iter().enumerate() {
            match (i, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                (_, s) => out.push_str(&format!(" {s} ")),
            }
            out.push_str(&body);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountPolynomialRecord {
    pub coefficients: Vec<String>,
    pub degree: Option<usize>,
    pub support: Vec<(u64, u128)>,
    pub held_out: Vec<(u64, u128)>,
}

impl From<&CountPolynomial> for CountPolynomialRecord {
    fn from(p: &CountPolynomial) -> Self {
        CountPolynomialRecord {
            coefficients: p.coefficient_strings(),
            degree: p.degree(),
            support: p.support.clone(),
            held_out: p.held_out.clone(),
        }
    }
}

/// Lagrange interpolation through `support`, validated against `held_out`.
pub fn fit_count_polynomial(support: &[(u64, u128)], held_out: &[(u64, u128)]) -> Result<CountPolynomial, FitError> {
    if support.len() < 2 {
        return Err(FitError::TooFewPoints(support.len()));
    }
    for (idx, &(q, _)) in support.iter().enumerate() {
        if !is_prime(q) {
            return Err(FitError::NotPrime(q));
        }
        if support[..idx].iter().any(|&(other, _)| other == q) {
            return Err(FitError::DuplicateSupport(q));
        }
    }
    let n = support.len();
    let mut coefficients = vec![BigRational::zero(); n];
    for (i, &(qi, ci)) in support.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - q_j) / (q_i - q_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(qj, _)) in support.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * rat(qj as i128);
            }
            basis = next;
            denom *= rat(qi as i128 - qj as i128);
        }
        let scale = BigRational::from_integer(BigInt::from(ci)) / denom;
        for (k, b) in basis.into_iter().enumerate() {
            coefficients[k] += b * &scale;
        }
    }
    let poly = CountPolynomial {
        coefficients: trim(coefficients),
        support: support.to_vec(),
        held_out: held_out.to_vec(),
    };
    for &(q, observed) in held_out {
        let predicted = poly.eval(q);
        if predicted != BigRational::from_integer(BigInt::from(observed)) {
            return Err(FitError::HeldOutMismatch { q, observed, predicted: predicted.to_string() });
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_at_most_one_two_by_two() {
        let support = [(2, 10), (3, 33), (5, 145), (7, 385)];
        let p = fit_count_polynomial(&support, &[]).unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.display(), "q^3 + q^2 - q");
        assert!(p.has_integer_coefficients());
    }

    #[test]
    fn constant_counts_have_degree_zero() {
        let p = fit_count_polynomial(&[(2, 4), (3, 4), (5, 4)], &[(7, 4)]).unwrap();
        assert_eq!(p.degree(), Some(0));
        let z = fit_count_polynomial(&[(2, 0), (3, 0)], &[]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn held_out_mismatch_is_diagnosed() {
        // q^3 sampled at two points looks linear; the held-out prime exposes it
        let err = fit_count_polynomial(&[(2, 8), (3, 27)], &[(5, 125)]).unwrap_err();
        assert!(matches!(err, FitError::HeldOutMismatch { q: 5, .. }));
    }

    #[test]
    fn bad_support_rejected() {
        assert_eq!(fit_count_polynomial(&[(2, 1)], &[]).unwrap_err(), FitError::TooFewPoints(1));
        assert_eq!(fit_count_polynomial(&[(2, 1), (2, 1)], &[]).unwrap_err(), FitError::DuplicateSupport(2));
        assert_eq!(fit_count_polynomial(&[(2, 1), (4, 1)], &[]).unwrap_err(), FitError::NotPrime(4));
    }

    #[test]
    fn record_uses_rational_strings() {
        let p = fit_count_polynomial(&[(2, 1), (3, 2)], &[]).unwrap();
        let rec = CountPolynomialRecord::from(&p);
        assert_eq!(rec.coefficients, vec!["-1".to_string(), "1".to_string()]);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"coefficients\":[\"-1\",\"1\"]"));
    }
}
