use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use degenlab::config::{parse_primes, read_config_file, split_pair, ConfigError, OUT_DIR_ENV};
use degenlab::{acceptance_suite, exit, run, AcceptanceOptions, ExperimentConfig, Report};
use degenlab_core::perverse::catalog_table;

#[derive(Debug, Parser)]
#[command(name = "degenlab", version, about = "Degeneracy-locus experiments over finite fields")]
struct Cli {
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Enumeration budget (number of matrices or data per exhaustive run).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Preferred interpolation primes, comma separated.
    #[arg(long, global = true)]
    primes: Option<String>,
    /// Held-out validation primes, comma separated.
    #[arg(long, global = true)]
    holdout: Option<String>,
    /// Output directory for reports.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Flat key=value config file; flags and positional pairs override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one experiment with key=value parameters.
    Run {
        experiment: String,
        params: Vec<String>,
    },
    /// Run the acceptance suite.
    Acceptance,
    /// Print the versioned convention catalog.
    Conventions,
    /// List the experiments.
    List,
}

fn build_config(cli: &Cli, experiment: &str, params: &[String]) -> Result<ExperimentConfig, ConfigError> {
    let mut config = ExperimentConfig::new(experiment)?;
    if let Some(path) = &cli.config {
        for (k, v) in read_config_file(path)? {
            config.set(&k, &v)?;
        }
    }
    for p in params {
        let (k, v) = split_pair(p)?;
        config.set(&k, &v)?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(budget) = cli.budget {
        config.budget = budget;
    }
    if let Some(p) = &cli.primes {
        config.primes = parse_primes("primes", p)?;
    }
    if let Some(p) = &cli.holdout {
        config.held_out = parse_primes("holdout", p)?;
    }
    if let Some(out) = &cli.out {
        config.out = Some(out.clone());
    }
    config.validate()?;
    Ok(config)
}

fn write_report(report: &Report, out: Option<&PathBuf>) -> Result<(), std::io::Error> {
    if let Some(dir) = out {
        let (jsonl, table) = report.write(dir)?;
        eprintln!("wrote {} and {}", jsonl.display(), table.display());
    }
    Ok(())
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(exit::USAGE as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return usage_error("--jobs must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            return usage_error(e);
        }
    }
    let outcome = match &cli.command {
        Command::List => {
            degenlab::EXPERIMENTS.iter().for_each(|e| println!("{e}"));
            return ExitCode::SUCCESS;
        }
        Command::Conventions => {
            print!("{}", catalog_table());
            return ExitCode::SUCCESS;
        }
        Command::Run { experiment, params } => {
            let config = match build_config(&cli, experiment, params) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let report = match run(&config) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            print!("{}", report.summary_table());
            write_report(&report, config.out.as_ref()).map(|_| report.passed())
        }
        Command::Acceptance => {
            let mut opts = AcceptanceOptions::default();
            if let Some(path) = &cli.config {
                let map = match read_config_file(path) {
                    Ok(m) => m,
                    Err(e) => return usage_error(e),
                };
                for (k, v) in map {
                    let parsed = v.parse::<u64>().map_err(|_| ConfigError::BadValue { key: k.clone(), value: v.clone() });
                    match (k.as_str(), parsed) {
                        ("seed", Ok(s)) => opts.seed = s,
                        ("budget", Ok(b)) => opts.budget = b,
                        ("seed" | "budget", Err(e)) => return usage_error(e),
                        _ => {}
                    }
                }
            }
            opts.seed = cli.seed.unwrap_or(opts.seed);
            opts.budget = cli.budget.unwrap_or(opts.budget);
            if opts.budget == 0 {
                eprintln!("warning: budget 0 refuses every enumeration; the suite will fail");
            }
            let result = acceptance_suite(&opts, |c| println!("{}", c.line()));
            for v in result.report.failures() {
                println!("FAIL {}: {}", v.assertion, v.detail);
            }
            let passed = result.passed();
            println!("acceptance: {}", if passed { "PASS" } else { "FAIL" });
            write_report(&result.report, cli.out.as_ref()).map(|_| passed)
        }
    };
    match outcome {
        Ok(true) => ExitCode::from(exit::PASS as u8),
        Ok(false) => ExitCode::from(exit::FAILURE as u8),
        Err(e) => usage_error(format!("cannot write report: {e}")),
    }
}
