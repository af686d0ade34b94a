//! Samplers for stable ADHM solutions.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{partition_witness, AdhmDatum, Partition};
use crate::determinantal::DEFAULT_BUDGET;
use crate::exactlin::{FpMatrix, LinalgError, PrimeField};
use crate::seed::{child_seed, rng_for};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    LowRankCommutator,
    ExhaustiveTiny,
    Partition,
    DirectSum,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::LowRankCommutator => "low_rank_commutator",
            Strategy::ExhaustiveTiny => "exhaustive_tiny",
            Strategy::Partition => "partition",
            Strategy::DirectSum => "direct_sum",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Strategy::LowRankCommutator, Strategy::ExhaustiveTiny, Strategy::Partition, Strategy::DirectSum]
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Field size for randomized strategies and for the exhaustive odometer.
    pub q: u64,
    /// Rejection-sampling attempts.
    pub attempts: u64,
    /// Maximum number of data the exhaustive odometer may visit.
    pub budget: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { q: 101, attempts: 1000, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("no sample found by {strategy}: {attempts} attempts, {solutions} solutions, 0 stable")]
    Exhausted { strategy: &'static str, attempts: u128, solutions: u128 },
    #[error("exhaustive enumeration needs {} data, budget is {budget}", required.map_or("more than 2^128".to_string(), |r| r.to_string()))]
    BudgetExceeded { required: Option<u128>, budget: u64 },
    #[error("{strategy} does not apply: {reason}")]
    Unsupported { strategy: &'static str, reason: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn random_matrix(f: &PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    let p = f.modulus();
    FpMatrix::from_fn(f, rows, cols, |_, _| rng.gen_range(0..p))
}

/// A solution (never checked for stability) with `Y = P(X) + R`, `rank R <= r/2`,
/// so that `rank [X, Y] <= r` and `-[X, Y]` factors through `W`.
pub(crate) fn low_rank_candidate(f: &PrimeField, n: usize, r: usize, rng: &mut ChaCha8Rng) -> AdhmDatum {
    let p = f.modulus();
    let x = random_matrix(f, n, n, rng);
    let mut y = FpMatrix::zeros(f, n, n);
    for _ in 0..n.max(1) {
        let c = rng.gen_range(0..p);
        y = y.dot(&x).add(&FpMatrix::identity(f, n).scale(&c)).expect("square");
    }
    for _ in 0..r / 2 {
        let u = random_matrix(f, n, 1, rng);
        let v = random_matrix(f, 1, n, rng);
        y = y.add(&u.dot(&v)).expect("square");
    }
    let comm = x.dot(&y).sub(&y.dot(&x)).expect("square");
    let (a, b) = comm.neg().rank_factorization();
    let k = a.cols();
    assert!(k <= r, "commutator rank {k} exceeds framing rank {r}");
    let i = a.hstack(&FpMatrix::zeros(f, n, r - k)).expect("n rows");
    let j = b.vstack(&random_matrix(f, r - k, n, rng)).expect("n columns");
    AdhmDatum { n, r, x, y, i, j }
}

/// Block sum; `r` and `n` add. Stability of the sum is not implied.
pub fn direct_sum(a: &AdhmDatum, b: &AdhmDatum) -> AdhmDatum {
    AdhmDatum {
        n: a.n + b.n,
        r: a.r + b.r,
        x: a.x.block_diag(&b.x),
        y: a.y.block_diag(&b.y),
        i: a.i.block_diag(&b.i),
        j: a.j.block_diag(&b.j),
    }
}

/// Number of data for `(n, r)` over `F_q`, or `None` on overflow.
fn data_count(n: usize, r: usize, q: u64) -> Option<u128> {
    (q as u128).checked_pow((2 * n * n + 2 * n * r) as u32)
}

pub(crate) fn decode_datum(f: &PrimeField, n: usize, r: usize, mut index: u128) -> AdhmDatum {
    let q = f.modulus() as u128;
    let mut next = |rows: usize, cols: usize| {
        FpMatrix::from_fn(f, rows, cols, |_, _| {
            let d = (index % q) as u64;
            index /= q;
            d
        })
    };
    let x = next(n, n);
    let y = next(n, n);
    let i = next(n, r);
    let j = next(r, n);
    AdhmDatum { n, r, x, y, i, j }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub total: u128,
    pub solutions: u128,
    pub stable: u128,
}

pub(crate) fn check_budget(n: usize, r: usize, q: u64, budget: u64) -> Result<u128, SampleError> {
    match data_count(n, r, q) {
        Some(total) if total <= budget as u128 => Ok(total),
        required => Err(SampleError::BudgetExceeded { required, budget }),
    }
}

/// Every stable solution over `F_q`, in odometer order.
pub fn enumerate_stable(n: usize, r: usize, q: u64, budget: u64) -> Result<(Vec<AdhmDatum>, EnumerationStats), SampleError> {
    let f = PrimeField::new(q)?;
    let total = check_budget(n, r, q, budget)?;
    let found: Vec<Option<AdhmDatum>> = (0..total as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let d = decode_datum(&f, n, r, idx as u128);
            if !d.is_solution() {
                return None;
            }
            Some(d.is_stable().then_some(d))
        })
        .collect();
    let solutions = found.len() as u128;
    let stable: Vec<AdhmDatum> = found.into_iter().flatten().collect();
    let stats = EnumerationStats { total, solutions, stable: stable.len() as u128 };
    Ok((stable, stats))
}

/// Returns a stable solution of size `(n, r)`, or the exhaustion counters.
/// Attempts are seeded individually and the lowest successful attempt wins.
pub fn sample_stable(n: usize, r: usize, strategy: Strategy, config: &SamplerConfig, seed: u64) -> Result<AdhmDatum, SampleError> {
    let label = strategy.name();
    match strategy {
        Strategy::LowRankCommutator => {
            let f = PrimeField::new(config.q)?;
            (0..config.attempts)
                .into_par_iter()
                .find_map_first(|k| {
                    let d = low_rank_candidate(&f, n, r, &mut rng_for(seed, label, k));
                    d.is_stable().then_some(d)
                })
                .ok_or(SampleError::Exhausted { strategy: label, attempts: config.attempts as u128, solutions: config.attempts as u128 })
        }
        Strategy::ExhaustiveTiny => {
            let (stable, stats) = enumerate_stable(n, r, config.q, config.budget)?;
            if stable.is_empty() {
                return Err(SampleError::Exhausted { strategy: label, attempts: stats.total, solutions: stats.solutions });
            }
            let pick = child_seed(seed, label, 0) % stable.len() as u64;
            Ok(stable[pick as usize].clone())
        }
        Strategy::Partition => {
            if r != 1 {
                return Err(SampleError::Unsupported { strategy: label, reason: format!("needs r = 1, got {r}") });
            }
            let f = PrimeField::new(config.q)?;
            let all = Partition::all(n);
            let pick = child_seed(seed, label, 0) % all.len() as u64;
            Ok(partition_witness(&all[pick as usize], &f))
        }
        Strategy::DirectSum => {
            if r < 2 {
                return Err(SampleError::Unsupported { strategy: label, reason: format!("needs r >= 2, got {r}") });
            }
            let f = PrimeField::new(config.q)?;
            (0..config.attempts)
                .into_par_iter()
                .find_map_first(|k| {
                    let mut rng = rng_for(seed, label, k);
                    let r1 = rng.gen_range(1..r);
                    let n1 = rng.gen_range(0..=n);
                    let a = low_rank_candidate(&f, n1, r1, &mut rng);
                    let b = low_rank_candidate(&f, n - n1, r - r1, &mut rng);
                    let d = direct_sum(&a, &b);
                    d.is_stable().then_some(d)
                })
                .ok_or(SampleError::Exhausted { strategy: label, attempts: config.attempts as u128, solutions: config.attempts as u128 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_point_case() {
        let (stable, stats) = enumerate_stable(1, 1, 2, 1 << 10).unwrap();
        assert_eq!(stats.total, 16);
        assert!(!stable.is_empty());
        assert!(stable.iter().all(|d| d.is_solution() && d.is_stable()));
        let f = PrimeField::new(2).unwrap();
        let point = AdhmDatum { j: FpMatrix::identity(&f, 1), ..AdhmDatum::zero(&f, 1, 1) };
        assert!(stable.contains(&point));
    }

    #[test]
    fn low_rank_commutator_rank_two() {
        let cfg = SamplerConfig::default();
        let d = sample_stable(2, 2, Strategy::LowRankCommutator, &cfg, 11).unwrap();
        assert!(d.is_solution() && d.is_stable());
        assert_eq!(d.tangent_dimension().unwrap(), 8);
        assert_eq!(sample_stable(2, 2, Strategy::LowRankCommutator, &cfg, 11).unwrap(), d);
    }

    #[test]
    fn direct_sum_of_points() {
        let f = PrimeField::new(5).unwrap();
        let p = partition_witness(&Partition::new(vec![1]), &f);
        let s = direct_sum(&p, &p);
        assert_eq!((s.n, s.r), (2, 2));
        assert!(s.is_solution());
        assert!(s.is_stable());
        let d = sample_stable(2, 2, Strategy::DirectSum, &SamplerConfig::default(), 3).unwrap();
        assert!(d.is_solution() && d.is_stable());
    }

    #[test]
    fn budget_and_strategy_guards() {
        let cfg = SamplerConfig { q: 2, attempts: 1, budget: 10 };
        assert!(matches!(sample_stable(1, 1, Strategy::ExhaustiveTiny, &cfg, 0), Err(SampleError::BudgetExceeded { .. })));
        assert!(matches!(sample_stable(1, 2, Strategy::Partition, &cfg, 0), Err(SampleError::Unsupported { .. })));
        assert!("direct_sum".parse::<Strategy>().is_ok());
    }
}
