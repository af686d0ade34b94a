//! Point counts over `F_q` for the generic determinantal family.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DeterminantalError, FamilySpec};
use crate::exactlin::rank_mod_p;

/// Default cap on the number of matrices enumerated per `(m, n, q)` run.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

const CHUNK: u64 = 1 << 14;

/// Number of `d`-dimensional subspaces of `F_q^l`; zero outside `0..=l`.
pub fn gaussian_binomial(l: i64, d: i64, q: u64) -> u128 {
    if d < 0 || l < 0 || d > l {
        return 0;
    }
    let (l, d) = (l as usize, d as usize);
    let q = q as u128;
    // q-Pascal: [l, d] = [l-1, d-1] + q^d [l-1, d]
    let mut row = vec![0u128; d + 1];
    row[0] = 1;
    for step in 1..=l {
        for k in (1..=d.min(step)).rev() {
            row[k] = row[k - 1] + q.pow(k as u32) * row[k];
        }
    }
    row[d]
}

/// `|GL_k(F_q)|`.
pub fn general_linear_order(k: usize, q: u64) -> u128 {
    let q = q as u128;
    (0..k).map(|i| q.pow(k as u32) - q.pow(i as u32)).product()
}

/// Number of `n × m` matrices of rank `k` over `F_q`, via the row space:
/// a `k`-subspace of `F_q^m` times the surjections `F_q^n -> F_q^k`.
pub fn rank_count_formula(m: usize, n: usize, k: usize, q: u64) -> Result<u128, DeterminantalError> {
    if k > m.min(n) {
        return Err(DeterminantalError::RankOutOfRange { k, max: m.min(n) });
    }
    let q128 = q as u128;
    let surjections: u128 = (0..k).map(|i| q128.pow(n as u32) - q128.pow(i as u32)).product();
    Ok(gaussian_binomial(m as i64, k as i64, q) * surjections)
}

/// Rank distribution of `n × m` matrices built one column at a time: a new
/// column either lies in the current column space (`q^k` choices) or raises
/// the rank (`q^n - q^k` choices). Exact, and independent of the closed form.
pub fn column_extension_rank_counts(m: usize, n: usize, q: u64) -> Vec<u128> {
    let q = q as u128;
    let top = m.min(n);
    let mut dist = vec![0u128; top + 1];
    dist[0] = 1;
    for _ in 0..m {
        let mut next = vec![0u128; top + 1];
        for (k, &count) in dist.iter().enumerate() {
            if count == 0 {
                continue;
            }
            next[k] += count * q.pow(k as u32);
            if k < top {
                next[k + 1] += count * (q.pow(n as u32) - q.pow(k as u32));
            }
        }
        dist = next;
    }
    dist
}

/// The loci whose classical points are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locus {
    /// `{h0 >= k}`.
    Degeneracy { k: i64 },
    /// Quotients of dimension `d` of `h0`.
    Grassmannian { d: usize },
    /// Quotients of dimension `d` of `h0` of the shifted dual, i.e. of `h1`.
    DualGrassmannian { d: usize },
    Incidence { d_plus: usize, d_minus: usize },
}

impl Locus {
    /// Number of classical points over a point with the given cohomology.
    pub fn fiber(&self, h0: usize, h1: usize, q: u64) -> u128 {
        match *self {
            Locus::Degeneracy { k } => u128::from(h0 as i64 >= k),
            Locus::Grassmannian { d } => gaussian_binomial(h0 as i64, d as i64, q),
            Locus::DualGrassmannian { d } => gaussian_binomial(h1 as i64, d as i64, q),
            Locus::Incidence { d_plus, d_minus } => {
                gaussian_binomial(h0 as i64, d_plus as i64, q) * gaussian_binomial(h1 as i64, d_minus as i64, q)
            }
        }
    }

    /// A priori upper bound on the degree in `q` of the count over `V_{m,n}`:
    /// at most `q^{mn}` base points times the largest fiber.
    pub fn degree_bound(&self, m: usize, n: usize) -> usize {
        let grass = |l: usize, d: usize| if d <= l { d * (l - d) } else { 0 };
        m * n
            + match *self {
                Locus::Degeneracy { .. } => 0,
                Locus::Grassmannian { d } => grass(n, d),
                Locus::DualGrassmannian { d } => grass(m, d),
                Locus::Incidence { d_plus, d_minus } => grass(n, d_plus) + grass(m, d_minus),
            }
    }

    pub fn label(&self) -> String {
        match *self {
            Locus::Degeneracy { k } => format!("D(k={k})"),
            Locus::Grassmannian { d } => format!("Gr(d={d})"),
            Locus::DualGrassmannian { d } => format!("GrDual(d={d})"),
            Locus::Incidence { d_plus, d_minus } => format!("Inc(d+={d_plus},d-={d_minus})"),
        }
    }
}

/// Exact counts keyed by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub family: String,
    pub q: u64,
    pub source: CountSource,
    pub entries: Vec<(String, u128)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub family: String,
    pub q: u64,
    pub label: String,
    pub count: u128,
}

impl CountTable {
    pub fn total(&self) -> u128 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn get(&self, label: &str) -> Option<u128> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, c)| *c)
    }

    pub fn records(&self) -> Vec<CountRecord> {
        self.entries
            .iter()
            .map(|(label, count)| CountRecord { family: self.family.clone(), q: self.q, label: label.clone(), count: *count })
            .collect()
    }

    pub fn to_json_lines(&self) -> String {
        self.records()
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain record serializes"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountSource {
    /// Every matrix was visited.
    Exhaustive,
    /// Rank strata counted by column extension; used beyond the budget.
    ColumnExtension,
}

fn check_budget(spec: &FamilySpec, budget: u64) -> Result<u64, DeterminantalError> {
    match spec.size() {
        Some(size) if size <= budget as u128 => Ok(size as u64),
        size => Err(DeterminantalError::BudgetExceeded { required: size, budget }),
    }
}

/// Visits every `n × m` matrix over `F_q` (row-major odometer, last entry
/// fastest) and folds the rank of each into a per-partition accumulator.
fn enumerate_ranks<A, G>(spec: &FamilySpec, budget: u64, init: impl Fn() -> A + Sync + Send, visit: G) -> Result<Vec<A>, DeterminantalError>
where
    A: Send,
    G: Fn(&mut A, usize) + Sync + Send,
{
    let total = check_budget(spec, budget)?;
    let (rows, cols, q) = (spec.n, spec.m, spec.q);
    let entries = rows * cols;
    let chunks = total.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = init();
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut digits = vec![0u64; entries];
            let mut rest = start;
            for slot in digits.iter_mut().rev() {
                *slot = rest % q;
                rest /= q;
            }
            let mut buf = vec![0u64; entries];
            for _ in start..end {
                buf.copy_from_slice(&digits);
                let rank = rank_mod_p(&mut buf, rows, cols, q);
                visit(&mut acc, rank);
                for slot in digits.iter_mut().rev() {
                    *slot += 1;
                    if *slot < q {
                        break;
                    }
                    *slot = 0;
                }
            }
            acc
        })
        .collect())
}

/// Exhaustive rank distribution, indexed by rank.
pub fn exhaustive_rank_counts(spec: &FamilySpec, budget: u64) -> Result<Vec<u128>, DeterminantalError> {
    let top = spec.m.min(spec.n);
    let parts = enumerate_ranks(spec, budget, || vec![0u128; top + 1], |acc, rank| acc[rank] += 1)?;
    Ok(parts.into_iter().fold(vec![0u128; top + 1], |mut total, part| {
        total.iter_mut().zip(part).for_each(|(t, p)| *t += p);
        total
    }))
}

pub fn enumerate_rank_counts(spec: &FamilySpec, budget: u64) -> Result<CountTable, DeterminantalError> {
    let counts = exhaustive_rank_counts(spec, budget)?;
    Ok(CountTable {
        family: spec.family_label(),
        q: spec.q,
        source: CountSource::Exhaustive,
        entries: counts.into_iter().enumerate().map(|(k, c)| (format!("rank={k}"), c)).collect(),
    })
}

/// Exhaustive count of a locus: the sum over all matrices of the fiber size.
pub fn exhaustive_locus_count(spec: &FamilySpec, budget: u64, locus: Locus) -> Result<u128, DeterminantalError> {
    if matches!(locus, Locus::Incidence { .. }) && spec.n < spec.m {
        return Err(DeterminantalError::NegativeRank { m: spec.m, n: spec.n });
    }
    let fibers: Vec<u128> = (0..=spec.m.min(spec.n))
        .map(|rank| locus.fiber(spec.n - rank, spec.m - rank, spec.q))
        .collect();
    let parts = enumerate_ranks(spec, budget, || 0u128, |acc, rank| *acc += fibers[rank])?;
    Ok(parts.into_iter().sum())
}

pub fn count_grassmannian(spec: &FamilySpec, budget: u64, d: usize) -> Result<u128, DeterminantalError> {
    exhaustive_locus_count(spec, budget, Locus::Grassmannian { d })
}

pub fn count_incidence(spec: &FamilySpec, budget: u64, d_plus: usize, d_minus: usize) -> Result<u128, DeterminantalError> {
    exhaustive_locus_count(spec, budget, Locus::Incidence { d_plus, d_minus })
}

/// Count of a locus from a rank distribution: `sum_rank N_rank * fiber`.
pub fn stratified_locus_count(m: usize, n: usize, q: u64, rank_counts: &[u128], locus: Locus) -> u128 {
    rank_counts
        .iter()
        .enumerate()
        .map(|(rank, &count)| count * locus.fiber(n - rank, m - rank, q))
        .sum()
}

/// Rank distributions with caching; exhaustive within budget, column extension
/// beyond it.
#[derive(Debug)]
pub struct CountEngine {
    budget: u64,
    cache: Mutex<HashMap<(usize, usize, u64), (Arc<Vec<u128>>, CountSource)>>,
}

impl CountEngine {
    pub fn new(budget: u64) -> Self {
        CountEngine { budget, cache: Mutex::new(HashMap::new()) }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn rank_counts(&self, spec: &FamilySpec) -> (Arc<Vec<u128>>, CountSource) {
        let key = (spec.m, spec.n, spec.q);
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let entry = match exhaustive_rank_counts(spec, self.budget) {
            Ok(counts) => (Arc::new(counts), CountSource::Exhaustive),
            Err(_) => (Arc::new(column_extension_rank_counts(spec.m, spec.n, spec.q)), CountSource::ColumnExtension),
        };
        self.cache.lock().expect("cache lock").insert(key, entry.clone());
        entry
    }

    pub fn locus_count(&self, spec: &FamilySpec, locus: Locus) -> Result<(u128, CountSource), DeterminantalError> {
        if matches!(locus, Locus::Incidence { .. }) && spec.n < spec.m {
            return Err(DeterminantalError::NegativeRank { m: spec.m, n: spec.n });
        }
        let (counts, source) = self.rank_counts(spec);
        Ok((stratified_locus_count(spec.m, spec.n, spec.q, &counts, locus), source))
    }
}

impl Default for CountEngine {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: usize, n: usize, q: u64) -> FamilySpec {
        FamilySpec::new(m, n, q).unwrap()
    }

    #[test]
    fn gaussian_binomial_small_values() {
        assert_eq!(gaussian_binomial(5, 0, 3), 1);
        assert_eq!(gaussian_binomial(2, 1, 2), 3);
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
        assert_eq!(gaussian_binomial(2, -1, 2), 0);
    }

    #[test]
    fn two_by_two_over_f2() {
        let t = enumerate_rank_counts(&spec(2, 2, 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.get("rank=0"), Some(1));
        assert_eq!(t.get("rank=1"), Some(9));
        assert_eq!(t.get("rank=2"), Some(6));
        assert_eq!(t.total(), 16);
    }

    #[test]
    fn one_by_one() {
        for q in [2, 3, 5, 7] {
            let t = enumerate_rank_counts(&spec(1, 1, q), DEFAULT_BUDGET).unwrap();
            assert_eq!(t.entries, vec![("rank=0".into(), 1), ("rank=1".into(), (q - 1) as u128)]);
        }
    }

    #[test]
    fn formula_rejects_large_rank() {
        assert_eq!(rank_count_formula(2, 2, 0, 5).unwrap(), 1);
        assert_eq!(rank_count_formula(2, 2, 1, 2).unwrap(), 9);
        assert!(rank_count_formula(2, 3, 3, 2).is_err());
    }

    #[test]
    fn budget_refusal_reports_requirement() {
        let err = enumerate_rank_counts(&spec(2, 2, 3), 80).unwrap_err();
        assert_eq!(err, DeterminantalError::BudgetExceeded { required: Some(81), budget: 80 });
    }

    #[test]
    fn grassmannian_of_column_family() {
        for q in [2u64, 3, 5] {
            let s = spec(1, 2, q);
            let q = q as u128;
            assert_eq!(count_grassmannian(&s, DEFAULT_BUDGET, 1).unwrap(), q * q + q);
            assert_eq!(count_grassmannian(&s, DEFAULT_BUDGET, 0).unwrap(), q * q);
        }
    }

    #[test]
    fn incidence_of_scalar_family() {
        for q in [2, 3, 5] {
            assert_eq!(count_incidence(&spec(1, 1, q), DEFAULT_BUDGET, 1, 1).unwrap(), 1);
        }
        assert!(count_incidence(&spec(2, 1, 2), DEFAULT_BUDGET, 1, 1).is_err());
    }

    #[test]
    fn general_linear_orders() {
        assert_eq!(general_linear_order(0, 7), 1);
        assert_eq!(general_linear_order(1, 3), 2);
        assert_eq!(general_linear_order(2, 2), 6);
    }

    #[test]
    fn engine_switches_source_at_budget() {
        let engine = CountEngine::new(100);
        assert_eq!(engine.rank_counts(&spec(2, 2, 3)).1, CountSource::Exhaustive);
        assert_eq!(engine.rank_counts(&spec(2, 2, 5)).1, CountSource::ColumnExtension);
    }
}
