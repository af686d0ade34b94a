//! The named experiments. Each turns a config into a report.

use std::time::Instant;

use degenlab_core::adhm::WitnessConfig;
use degenlab_core::determinantal::CountEngine;
use degenlab_core::numerology::max_generators;
use degenlab_core::perverse::{ConventionId, SearchOptions};

use crate::checks::{self, AdhmParams, ClaimGroup, NumerologyParams};
use crate::config::{ConfigError, ExperimentConfig};
use crate::report::{Report, Verdict};

pub fn run(config: &ExperimentConfig) -> Result<Report, ConfigError> {
    config.validate()?;
    let mut report = Report::new(config);
    let start = Instant::now();
    match config.experiment.as_str() {
        "determinantal-scan" => determinantal_scan(config, &mut report)?,
        "adhm-verify" => adhm_verify(config, &mut report)?,
        "hilbert-witness" => hilbert_witness(config, &mut report)?,
        "nonempty-criterion" => nonempty_criterion(config, &mut report)?,
        "perverse-correspondence" => perverse_correspondence(config, &mut report)?,
        "convention-search" => convention_search(config, &mut report)?,
        "numerology-identities" => numerology_identities(config, &mut report)?,
        other => return Err(ConfigError::UnknownExperiment(other.into())),
    }
    report.timing.push(("total".into(), start.elapsed()));
    Ok(report)
}

fn determinantal_scan(config: &ExperimentConfig, report: &mut Report) -> Result<(), ConfigError> {
    let m: usize = config.get("m", 2)?;
    let n: usize = config.get("n", 2)?;
    let dmax: usize = config.get("dmax", 2)?;
    let mut plan = config.prime_plan();
    if let Some(q) = config.get_list::<u64>("q")? {
        crate::config::parse_primes("q", &config.params["q"])?;
        plan.preferred = q;
    }
    let engine = CountEngine::new(config.budget);
    let sizes = [(m, n)];
    let in_budget: Vec<u64> = plan
        .preferred
        .iter()
        .copied()
        .filter(|&q| (q as u128).checked_pow((m * n) as u32).is_some_and(|s| s <= config.budget as u128))
        .collect();
    checks::rank_counts(report, &sizes, &in_budget, config.budget);
    checks::transfer_cross_check(report, &sizes, &in_budget, config.budget);
    report.record("enumerated-fields", &in_budget);
    checks::codimension(report, &engine, &sizes, &plan);
    if n >= m {
        checks::dimension_claims(report, &engine, &sizes, dmax, &plan, ClaimGroup::All);
    }
    Ok(())
}

fn adhm_verify(config: &ExperimentConfig, report: &mut Report) -> Result<(), ConfigError> {
    let params = AdhmParams {
        nmax: config.get("nmax", 3)?,
        rmax: config.get("rmax", 2)?,
        samples: config.get("samples", 100)?,
        q: config.get("q", 101)?,
        points: config.get("points", 10)?,
        full_scan: config.get("full_scan", false)?,
        budget: config.budget,
    };
    if !degenlab_core::exactlin::is_prime(params.q) {
        return Err(ConfigError::NotPrime(params.q));
    }
    checks::adhm_smoothness(report, config.seed, &params);
    Ok(())
}

fn witness_config(config: &ExperimentConfig) -> Result<WitnessConfig, ConfigError> {
    let default = WitnessConfig::default();
    let q = config.get("q", default.q)?;
    if !degenlab_core::exactlin::is_prime(q) {
        return Err(ConfigError::NotPrime(q));
    }
    Ok(WitnessConfig {
        q,
        randomized_attempts: config.get("attempts", default.randomized_attempts)?,
        exhaustive_fields: match config.get_list::<u64>("exhaustive_fields")? {
            Some(f) => crate::config::parse_primes("exhaustive_fields", &config.params["exhaustive_fields"]).map(|_| f)?,
            None => default.exhaustive_fields,
        },
        exhaustive_budget: config.get("exhaustive_budget", default.exhaustive_budget.min(config.budget))?,
    })
}

fn hilbert_witness(config: &ExperimentConfig, report: &mut Report) -> Result<(), ConfigError> {
    let nmax: usize = config.get("nmax", 8)?;
    checks::partition_maxima(report, nmax);
    let wc = witness_config(config)?;
    record_witness_config(report, &wc);
    checks::witness_law(report, config.seed, 1, nmax, |n| max_generators(n as u64) as usize + 1, &wc);
    Ok(())
}

fn nonempty_criterion(config: &ExperimentConfig, report: &mut Report) -> Result<(), ConfigError> {
    let r: usize = config.get("r", 2)?;
    if r == 0 {
        return Err(ConfigError::BadValue { key: "r".into(), value: "0".into() });
    }
    let nmax: usize = config.get("nmax", 3)?;
    let lmax: usize = config.get("lmax", 4)?;
    let wc = witness_config(config)?;
    record_witness_config(report, &wc);
    checks::witness_law(report, config.seed, r, nmax, |_| lmax, &wc);
    Ok(())
}

fn record_witness_config(report: &mut Report, wc: &WitnessConfig) {
    report.record("witness-config", wc);
}

fn search_options(config: &ExperimentConfig) -> Result<SearchOptions, ConfigError> {
    let default = SearchOptions::default();
    Ok(SearchOptions {
        samples_per_size: config.get("samples", default.samples_per_size)?,
        q: config.get("q", default.q)?,
        budget: config.budget,
        seed: config.seed,
        ..default
    })
}

fn convention_search(config: &ExperimentConfig, report: &mut Report) -> Result<(), ConfigError> {
    checks::perverse_benchmarks(report, &search_options(config)?);
    Ok(())
}

fn perverse_correspondence(config: &ExperimentConfig, report: &mut Report) -> Result<(), ConfigError> {
    let conventions: Vec<ConventionId> = match config.params.get("convention") {
        Some(label) => vec![ConventionId::from_label(label)
            .ok_or_else(|| ConfigError::BadValue { key: "convention".into(), value: label.clone() })?],
        None => checks::perverse_benchmarks(report, &search_options(config)?),
    };
    if conventions.is_empty() {
        report.verdict(Verdict::new(
            "a convention to test",
            checks::ANCHOR_SEARCH,
            false,
            "no convention given and none survived the search",
        ));
    }
    for conv in &conventions {
        if !report.conventions.contains(&conv.label()) {
            report.conventions.push(conv.label());
        }
        checks::perverse_correspondence(report, conv, config.seed, config.budget);
    }
    Ok(())
}

fn numerology_identities(config: &ExperimentConfig, report: &mut Report) -> Result<(), ConfigError> {
    let params = NumerologyParams {
        rmax: config.get("rmax", 5)?,
        lmax: config.get("lmax", 25)?,
        classes: config.get("classes", 1000)?,
    };
    checks::numerology_identities(report, config.seed, &params);
    Ok(())
}
