//! Reports: per-assertion verdicts, data records and timing.
//!
//! The JSON-lines form puts timing on its own final line so that two runs with
//! the same configuration agree byte for byte once that line is dropped.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub assertion: String,
    /// The claim this assertion checks, in words.
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(assertion: impl Into<String>, anchor: &str, passed: bool, detail: impl Into<String>) -> Self {
        Verdict { assertion: assertion.into(), anchor: anchor.to_string(), passed, detail: detail.into() }
    }

    pub fn refused(assertion: impl Into<String>, anchor: &str, reason: impl std::fmt::Display) -> Self {
        Verdict::new(assertion, anchor, false, format!("refused: {reason}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub label: String,
    pub data: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub verdicts: Vec<Verdict>,
    pub records: Vec<Record>,
    pub conventions: Vec<String>,
    #[serde(skip)]
    pub timing: Vec<(String, Duration)>,
}

impl Report {
    pub fn new(config: &ExperimentConfig) -> Self {
        Report {
            experiment: config.experiment.clone(),
            config: config.clone(),
            verdicts: Vec::new(),
            records: Vec::new(),
            conventions: Vec::new(),
            timing: Vec::new(),
        }
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn record(&mut self, label: impl Into<String>, data: impl Serialize) {
        let data = serde_json::to_value(data).expect("report records serialize");
        self.records.push(Record { label: label.into(), data });
    }

    pub fn passed(&self) -> bool {
        !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }

    /// Deterministic lines only: header, verdicts, records, conventions, summary.
    pub fn deterministic_lines(&self) -> Vec<String> {
        let mut lines = vec![json!({
            "type": "header",
            "experiment": self.experiment,
            "config": self.config,
        })];
        lines.extend(self.verdicts.iter().map(|v| json!({ "type": "verdict", "verdict": v })));
        lines.extend(self.records.iter().map(|r| json!({ "type": "record", "label": r.label, "data": r.data })));
        lines.extend(self.conventions.iter().map(|c| json!({ "type": "convention", "id": c })));
        let failed = self.failures().count();
        lines.push(json!({
            "type": "summary",
            "passed": self.passed(),
            "assertions": self.verdicts.len(),
            "failed": failed,
        }));
        lines.into_iter().map(|l| l.to_string()).collect()
    }

    pub fn timing_line(&self) -> String {
        let phases: Vec<Value> =
            self.timing.iter().map(|(phase, d)| json!({ "phase": phase, "ms": d.as_millis() as u64 })).collect();
        json!({ "type": "timing", "phases": phases }).to_string()
    }

    pub fn to_json_lines(&self) -> String {
        let mut lines = self.deterministic_lines();
        lines.push(self.timing_line());
        lines.join("\n") + "\n"
    }

    pub fn summary_table(&self) -> String {
        let width = self.verdicts.iter().map(|v| v.assertion.len()).max().unwrap_or(0).clamp(9, 72);
        let mut out = format!("experiment: {}  seed: {}\n", self.experiment, self.config.seed);
        out.push_str(&format!("{:<6} {:<width$}  detail\n", "status", "assertion"));
        for v in &self.verdicts {
            let status = if v.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status:<6} {:<width$}  {}\n", v.assertion, v.detail));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} assertions, {} failed: {}\n",
            self.verdicts.len(),
            failed,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        for (phase, d) in &self.timing {
            out.push_str(&format!("time {phase}: {:.2}s\n", d.as_secs_f64()));
        }
        out
    }

    /// Writes `<experiment>.jsonl` and `<experiment>.txt` into `dir`.
    pub fn write(&self, dir: &Path) -> std::io::Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let jsonl = dir.join(format!("{}.jsonl", self.experiment));
        let table = dir.join(format!("{}.txt", self.experiment));
        std::fs::write(&jsonl, self.to_json_lines())?;
        std::fs::write(&table, self.summary_table())?;
        Ok((jsonl, table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timing_is_kept_out_of_deterministic_lines() {
        let cfg = ExperimentConfig::new("numerology-identities").unwrap();
        let mut a = Report::new(&cfg);
        a.verdict(Verdict::new("x", "anchor", true, "ok"));
        let mut b = a.clone();
        a.timing.push(("all".into(), Duration::from_millis(3)));
        b.timing.push(("all".into(), Duration::from_millis(900)));
        assert_eq!(a.deterministic_lines(), b.deterministic_lines());
        assert_ne!(a.to_json_lines(), b.to_json_lines());
        assert!(a.passed());
        a.verdict(Verdict::refused("y", "anchor", "budget 0"));
        assert!(!a.passed());
        assert!(a.summary_table().contains("FAIL"));
    }

    #[test]
    fn empty_report_does_not_pass() {
        let cfg = ExperimentConfig::new("numerology-identities").unwrap();
        assert!(!Report::new(&cfg).passed());
    }
}
