//! The acceptance suite: ten criteria run in order into one report.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use degenlab_core::adhm::WitnessConfig;
use degenlab_core::determinantal::{CountEngine, PrimePlan, DEFAULT_BUDGET};
use degenlab_core::numerology::max_generators;
use degenlab_core::perverse::SearchOptions;

use crate::checks::{self, AdhmParams, ClaimGroup, NumerologyParams};
use crate::config::{ExperimentConfig, DEFAULT_SEED};
use crate::report::{Report, Verdict};

pub const ANCHOR_RUNTIME: &str = "the criterion finishes within its stated time limit";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AcceptanceOptions {
    pub seed: u64,
    pub budget: u64,
}

impl Default for AcceptanceOptions {
    fn default() -> Self {
        AcceptanceOptions { seed: DEFAULT_SEED, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub assertions: usize,
    pub failed: usize,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.assertions > 0 && self.failed == 0
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {} ({}/{} assertions passed, {:.1}s)",
            self.number,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.assertions - self.failed,
            self.assertions,
            self.elapsed.as_secs_f64()
        )
    }
}

pub struct AcceptanceReport {
    pub report: Report,
    pub criteria: Vec<CriterionResult>,
}

impl AcceptanceReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionResult::passed) && self.report.passed()
    }
}

pub const TITLES: [&str; 10] = [
    "rank-count exactness",
    "codimension law",
    "Fredholm and duality invariants",
    "incidence dimension",
    "birationality and isomorphism window",
    "framed moduli smoothness",
    "rank-1 witness law",
    "rank-2 criterion probe",
    "blow-up quiver benchmarks",
    "numerology identities",
];

const LIMITS: [Option<u64>; 10] = [Some(10), Some(120), None, None, None, None, Some(60), None, None, None];
const TOTAL_LIMIT: Duration = Duration::from_secs(300);

fn small_sizes(min: usize) -> Vec<(usize, usize)> {
    (min..=3).flat_map(|m| (min..=3).map(move |n| (m, n))).collect()
}

fn criterion(number: usize, report: &mut Report, opts: &AcceptanceOptions) {
    let engine = CountEngine::new(opts.budget);
    let plan = PrimePlan::default();
    match number {
        1 => checks::rank_counts(report, &small_sizes(0), &[2, 3], opts.budget),
        2 => {
            checks::codimension(report, &engine, &small_sizes(0), &plan);
            checks::transfer_cross_check(report, &small_sizes(0), &[2, 3], opts.budget);
        }
        3 => checks::fredholm_duality(report, opts.seed, 10_000, &[2, 101, 0], 5),
        4 => checks::dimension_claims(report, &engine, &small_sizes(1), 3, &plan, ClaimGroup::Dimensions),
        5 => {
            checks::dimension_claims(report, &engine, &small_sizes(1), 3, &plan, ClaimGroup::Birational);
            checks::window_counts(report, &engine, &small_sizes(1), 3, &[2, 3, 5]);
        }
        6 => {
            let params = AdhmParams { nmax: 3, rmax: 2, samples: 100, q: 101, points: 10, full_scan: true, budget: opts.budget };
            checks::adhm_smoothness(report, opts.seed, &params);
        }
        7 => {
            checks::partition_maxima(report, 8);
            let wc = witness_config(opts);
            checks::witness_law(report, opts.seed, 1, 8, |n| max_generators(n as u64) as usize + 1, &wc);
        }
        8 => {
            let wc = witness_config(opts);
            report.record("witness-config", &wc);
            checks::witness_law(report, opts.seed, 2, 3, |_| 4, &wc);
        }
        9 => {
            let options = SearchOptions { budget: opts.budget, seed: opts.seed, ..SearchOptions::default() };
            checks::perverse_benchmarks(report, &options);
        }
        10 => {
            let params = NumerologyParams { rmax: 5, lmax: 25, classes: 1000 };
            checks::numerology_identities(report, opts.seed, &params);
        }
        _ => unreachable!("criteria are numbered 1 to 10"),
    }
}

fn witness_config(opts: &AcceptanceOptions) -> WitnessConfig {
    let default = WitnessConfig::default();
    WitnessConfig { exhaustive_budget: default.exhaustive_budget.min(opts.budget), ..default }
}

/// The config echoed in the acceptance report.
pub fn acceptance_config(opts: &AcceptanceOptions) -> ExperimentConfig {
    let plan = PrimePlan::default();
    ExperimentConfig {
        experiment: "acceptance".into(),
        params: BTreeMap::new(),
        seed: opts.seed,
        budget: opts.budget,
        primes: plan.preferred,
        held_out: plan.held_out,
        out: None,
    }
}

/// Runs every criterion in order, calling `progress` after each one.
pub fn acceptance_suite(opts: &AcceptanceOptions, mut progress: impl FnMut(&CriterionResult)) -> AcceptanceReport {
    let mut report = Report::new(&acceptance_config(opts));
    let mut criteria = Vec::new();
    let start = Instant::now();
    for (idx, title) in TITLES.iter().enumerate() {
        let number = idx + 1;
        let mut part = Report::new(&report.config);
        let t0 = Instant::now();
        criterion(number, &mut part, opts);
        let elapsed = t0.elapsed();
        if let Some(limit) = LIMITS[idx] {
            part.verdict(Verdict::new(
                "runtime",
                ANCHOR_RUNTIME,
                elapsed < Duration::from_secs(limit),
                format!("limit {limit}s"),
            ));
        }
        let result = CriterionResult {
            number,
            title,
            assertions: part.verdicts.len(),
            failed: part.failures().count(),
            elapsed,
        };
        progress(&result);
        for mut v in part.verdicts {
            v.assertion = format!("[{number}] {}", v.assertion);
            report.verdicts.push(v);
        }
        for mut r in part.records {
            r.label = format!("[{number}] {}", r.label);
            report.records.push(r);
        }
        report.conventions.extend(part.conventions);
        report.timing.push((format!("criterion {number}"), elapsed));
        criteria.push(result);
    }
    let total = start.elapsed();
    report.verdict(Verdict::new("total runtime", ANCHOR_RUNTIME, total < TOTAL_LIMIT, "limit 300s"));
    report.timing.push(("total".into(), total));
    AcceptanceReport { report, criteria }
}
