//! Experiment configuration: a flat `key=value` map plus the common knobs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use degenlab_core::determinantal::{PrimePlan, DEFAULT_BUDGET};
use degenlab_core::exactlin::is_prime;
use serde::Serialize;
use thiserror::Error;

pub const OUT_DIR_ENV: &str = "DEGENLAB_OUT_DIR";
pub const DEFAULT_SEED: u64 = 20240607;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown experiment {0:?}; expected one of {list}", list = EXPERIMENTS.join(", "))]
    UnknownExperiment(String),
    #[error("malformed parameter {0:?}; expected key=value")]
    Malformed(String),
    #[error("parameter {key}: cannot parse {value:?}")]
    BadValue { key: String, value: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("primes list must not be empty")]
    NoPrimes,
    #[error("cannot read config file {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

pub const EXPERIMENTS: [&str; 7] = [
    "determinantal-scan",
    "adhm-verify",
    "hilbert-witness",
    "nonempty-criterion",
    "perverse-correspondence",
    "convention-search",
    "numerology-identities",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub budget: u64,
    /// Preferred interpolation support primes.
    pub primes: Vec<u64>,
    pub held_out: Vec<u64>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

/// Parses `2,3,5` style lists.
pub fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| ConfigError::BadValue { key: key.into(), value: value.into() }))
        .collect()
}

pub fn parse_primes(key: &str, value: &str) -> Result<Vec<u64>, ConfigError> {
    let primes: Vec<u64> = parse_list(key, value)?;
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(ConfigError::NotPrime(bad));
    }
    Ok(primes)
}

/// Reads `key=value` lines; blank lines and `#` comments are ignored.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
    let mut map = BTreeMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (k, v) = split_pair(line)?;
        map.insert(k, v);
    }
    Ok(map)
}

pub fn split_pair(s: &str) -> Result<(String, String), ConfigError> {
    let (k, v) = s.split_once('=').ok_or_else(|| ConfigError::Malformed(s.into()))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(ConfigError::Malformed(s.into()));
    }
    Ok((k.to_string(), v.trim().to_string()))
}

impl ExperimentConfig {
    pub fn new(experiment: &str) -> Result<Self, ConfigError> {
        if !EXPERIMENTS.contains(&experiment) {
            return Err(ConfigError::UnknownExperiment(experiment.into()));
        }
        let plan = PrimePlan::default();
        Ok(ExperimentConfig {
            experiment: experiment.into(),
            params: BTreeMap::new(),
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
            primes: plan.preferred,
            held_out: plan.held_out,
            out: None,
        })
    }

    /// Applies one `key=value` pair. Common keys (`seed`, `budget`, `primes`,
    /// `holdout`, `out`) set the typed fields; the rest are experiment params.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::BadValue { key: key.into(), value: value.into() };
        match key {
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            "budget" => self.budget = value.parse().map_err(|_| bad())?,
            "primes" => self.primes = parse_primes(key, value)?,
            "holdout" => self.held_out = parse_primes(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "experiment" => {}
            _ => {
                self.params.insert(key.into(), value.into());
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.budget == 0 {
            return Err(ConfigError::ZeroBudget);
        }
        if self.primes.is_empty() {
            return Err(ConfigError::NoPrimes);
        }
        for key in self.params.keys() {
            if key.is_empty() {
                return Err(ConfigError::Malformed(key.clone()));
            }
        }
        Ok(())
    }

    pub fn prime_plan(&self) -> PrimePlan {
        PrimePlan { preferred: self.primes.clone(), held_out: self.held_out.clone() }
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, ConfigError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| ConfigError::BadValue { key: key.into(), value: v.clone() }),
        }
    }

    pub fn get_list<T: std::str::FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, ConfigError> {
        self.params.get(key).map(|v| parse_list(key, v)).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_and_lists() {
        assert_eq!(split_pair(" m = 2 ").unwrap(), ("m".to_string(), "2".to_string()));
        assert!(split_pair("m2").is_err());
        assert!(split_pair("=2").is_err());
        assert_eq!(parse_primes("q", "2,3,5").unwrap(), vec![2, 3, 5]);
        assert!(matches!(parse_primes("q", "2,4"), Err(ConfigError::NotPrime(4))));
    }

    #[test]
    fn typed_and_free_keys() {
        let mut c = ExperimentConfig::new("determinantal-scan").unwrap();
        c.set("seed", "9").unwrap();
        c.set("m", "2").unwrap();
        c.set("primes", "2,3").unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.get("m", 0usize).unwrap(), 2);
        assert_eq!(c.get("n", 3usize).unwrap(), 3);
        assert_eq!(c.primes, vec![2, 3]);
        assert!(c.set("budget", "x").is_err());
        c.budget = 0;
        assert!(matches!(c.validate(), Err(ConfigError::ZeroBudget)));
        assert!(ExperimentConfig::new("nope").is_err());
    }
}
