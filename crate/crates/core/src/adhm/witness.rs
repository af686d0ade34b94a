//! Search for stable solutions whose universal complex has `h0 >= l` at a point.
//!
//! A witness found at `(x, y)` is returned translated so that the jump sits at
//! the origin. Stages run in order and stop at the first witness:
//!
//! 1. structured: direct sums of `r` rank-1 monomial witnesses of total size `n`;
//! 2. randomized: low-rank-commutator candidates over `F_q`, scanned at every
//!    point `(x, y)` where both `X - x` and `Y - y` are singular;
//! 3. exhaustive: every datum over each tiny field within budget, at every point.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::{check_budget, decode_datum, low_rank_candidate};
use super::{direct_sum, partition_witness, AdhmDatum, Partition};
use crate::exactlin::{FpMatrix, PrimeField};
use crate::seed::rng_for;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessConfig {
    /// Field for the structured and randomized stages.
    pub q: u64,
    pub randomized_attempts: u64,
    /// Fields tried by the exhaustive stage, in order.
    pub exhaustive_fields: Vec<u64>,
    /// Maximum number of data per exhaustive field.
    pub exhaustive_budget: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { q: 101, randomized_attempts: 10_000, exhaustive_fields: vec![2, 3], exhaustive_budget: 1 << 20 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStage {
    Structured,
    Randomized,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTrace {
    pub stage: SearchStage,
    pub field: u64,
    /// `found`, `exhausted` or `skipped`.
    pub status: String,
    /// Candidates visited; recorded only for completed stages so that reports
    /// do not depend on thread scheduling.
    pub candidates: Option<u128>,
    pub stable: Option<u128>,
    pub note: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTrace {
    pub stages: Vec<StageTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found { datum: AdhmDatum, h0: usize, stage: SearchStage, description: String, trace: WitnessTrace },
    Exhausted { trace: WitnessTrace },
}

impl WitnessOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, WitnessOutcome::Found { .. })
    }

    pub fn trace(&self) -> &WitnessTrace {
        match self {
            WitnessOutcome::Found { trace, .. } | WitnessOutcome::Exhausted { trace } => trace,
        }
    }
}

/// Nonincreasing sequences of `parts` nonnegative integers summing to `total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for v in (0..=rest.min(max)).rev() {
            prefix.push(v);
            go(rest - v, slots - 1, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, total, &mut Vec::new(), &mut out);
    out
}

fn structured_stage(r: usize, n: usize, l: usize, f: &PrimeField) -> (Option<(AdhmDatum, usize, String)>, u128, u128) {
    let (mut visited, mut stable) = (0u128, 0u128);
    for sizes in compositions(n, r) {
        let choices: Vec<Vec<Partition>> = sizes.iter().map(|&s| Partition::all(s)).collect();
        let mut idx = vec![0usize; r];
        loop {
            let pieces: Vec<&Partition> = idx.iter().zip(&choices).map(|(&k, c)| &c[k]).collect();
            let datum = pieces
                .iter()
                .map(|p| partition_witness(p, f))
                .reduce(|a, b| direct_sum(&a, &b))
                .expect("r >= 1");
            visited += 1;
            if datum.is_stable() {
                stable += 1;
                let h0 = datum.h0_at(0, 0).expect("stable solution");
                if h0 >= l {
                    let names: Vec<String> = pieces.iter().map(|p| p.to_string()).collect();
                    return (Some((datum, h0, format!("direct sum of monomial witnesses {}", names.join(" + ")))), visited, stable);
                }
            }
            // odometer over partition choices
            let mut pos = 0;
            while pos < r {
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == r {
                break;
            }
        }
    }
    (None, visited, stable)
}

/// Scalars `t` with `M - t` singular.
fn singular_shifts(m: &FpMatrix, f: &PrimeField) -> Vec<u64> {
    (0..f.modulus()).filter(|t| m.shift_diagonal(t).rank() < m.rows()).collect()
}

/// First point (in scan order) where `h0 >= l`; the origin is always tried.
fn jump_point(d: &AdhmDatum, l: usize, points: &[(u64, u64)]) -> Option<((u64, u64), usize)> {
    points.iter().find_map(|&(x, y)| {
        let h0 = d.h0_at(x, y).ok()?;
        (h0 >= l).then_some(((x, y), h0))
    })
}

fn eigen_points(d: &AdhmDatum) -> Vec<(u64, u64)> {
    let f = d.field();
    let xs = singular_shifts(&d.x, f);
    let ys = singular_shifts(&d.y, f);
    let mut pts = vec![(0, 0)];
    pts.extend(xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))));
    pts
}

pub fn degeneracy_witness_search(r: usize, n: usize, l: usize, config: &WitnessConfig, seed: u64) -> WitnessOutcome {
    let mut trace = WitnessTrace::default();
    assert!(r >= 1, "framing rank must be positive");
    let f = PrimeField::new(config.q).expect("witness field must be prime");

    let (hit, visited, stable) = structured_stage(r, n, l, &f);
    if let Some((datum, h0, description)) = hit {
        trace.stages.push(StageTrace {
            stage: SearchStage::Structured,
            field: config.q,
            status: "found".into(),
            candidates: Some(visited),
            stable: Some(stable),
            note: description.clone(),
        });
        return WitnessOutcome::Found { datum, h0, stage: SearchStage::Structured, description, trace };
    }
    trace.stages.push(StageTrace {
        stage: SearchStage::Structured,
        field: config.q,
        status: "exhausted".into(),
        candidates: Some(visited),
        stable: Some(stable),
        note: format!("{visited} direct sums of {r} monomial witnesses"),
    });

    let stable_count = AtomicU64::new(0);
    let hit = (0..config.randomized_attempts).into_par_iter().find_map_first(|k| {
        let d = low_rank_candidate(&f, n, r, &mut rng_for(seed, "adhm/witness", k));
        if !d.is_stable() {
            return None;
        }
        stable_count.fetch_add(1, Ordering::Relaxed);
        let (pt, h0) = jump_point(&d, l, &eigen_points(&d))?;
        Some((d.translate(pt.0, pt.1), h0, k, pt))
    });
    if let Some((datum, h0, k, pt)) = hit {
        let description = format!("randomized attempt {k}, jump at {pt:?} moved to origin");
        trace.stages.push(StageTrace {
            stage: SearchStage::Randomized,
            field: config.q,
            status: "found".into(),
            candidates: None,
            stable: None,
            note: description.clone(),
        });
        return WitnessOutcome::Found { datum, h0, stage: SearchStage::Randomized, description, trace };
    }
    trace.stages.push(StageTrace {
        stage: SearchStage::Randomized,
        field: config.q,
        status: "exhausted".into(),
        candidates: Some(config.randomized_attempts as u128),
        stable: Some(stable_count.load(Ordering::Relaxed) as u128),
        note: "low-rank-commutator candidates scanned at singular points".into(),
    });

    for &q in &config.exhaustive_fields {
        let total = match check_budget(n, r, q, config.exhaustive_budget) {
            Ok(t) => t,
            Err(e) => {
                trace.stages.push(StageTrace {
                    stage: SearchStage::Exhaustive,
                    field: q,
                    status: "skipped".into(),
                    candidates: None,
                    stable: None,
                    note: e.to_string(),
                });
                continue;
            }
        };
        let fq = PrimeField::new(q).expect("exhaustive field must be prime");
        let points: Vec<(u64, u64)> = (0..q).flat_map(|x| (0..q).map(move |y| (x, y))).collect();
        let stable_count = AtomicU64::new(0);
        let hit = (0..total as u64).into_par_iter().find_map_first(|idx| {
            let d = decode_datum(&fq, n, r, idx as u128);
            if !d.is_solution() || !d.is_stable() {
                return None;
            }
            stable_count.fetch_add(1, Ordering::Relaxed);
            let (pt, h0) = jump_point(&d, l, &points)?;
            Some((d.translate(pt.0, pt.1), h0, idx, pt))
        });
        if let Some((datum, h0, idx, pt)) = hit {
            let description = format!("exhaustive F_{q} datum #{idx}, jump at {pt:?} moved to origin");
            trace.stages.push(StageTrace {
                stage: SearchStage::Exhaustive,
                field: q,
                status: "found".into(),
                candidates: None,
                stable: None,
                note: description.clone(),
            });
            return WitnessOutcome::Found { datum, h0, stage: SearchStage::Exhaustive, description, trace };
        }
        trace.stages.push(StageTrace {
            stage: SearchStage::Exhaustive,
            field: q,
            status: "exhausted".into(),
            candidates: Some(total),
            stable: Some(stable_count.load(Ordering::Relaxed) as u128),
            note: format!("all data over F_{q} at all {} points", points.len()),
        });
    }
    WitnessOutcome::Exhausted { trace }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> WitnessConfig {
        WitnessConfig { randomized_attempts: 50, ..WitnessConfig::default() }
    }

    #[test]
    fn composition_lists() {
        assert_eq!(compositions(3, 2), vec![vec![3, 0], vec![2, 1]]);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }

    #[test]
    fn rank_one_examples() {
        let found = degeneracy_witness_search(1, 3, 3, &quick(), 1);
        match found {
            WitnessOutcome::Found { datum, h0, stage, .. } => {
                assert_eq!((h0, stage), (3, SearchStage::Structured));
                assert!(datum.is_solution() && datum.is_stable());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert!(degeneracy_witness_search(1, 1, 2, &quick(), 1).is_found());
        assert!(!degeneracy_witness_search(1, 3, 4, &quick(), 1).is_found());
    }

    #[test]
    fn rank_two_mixed_witness() {
        // (1) plus the empty witness: h0 = 2 + 1
        let out = degeneracy_witness_search(2, 1, 3, &quick(), 4);
        assert!(out.is_found());
        let empty = degeneracy_witness_search(2, 1, 4, &quick(), 4);
        assert!(!empty.is_found());
        let stages: Vec<SearchStage> = empty.trace().stages.iter().map(|s| s.stage).collect();
        assert_eq!(stages, vec![SearchStage::Structured, SearchStage::Randomized, SearchStage::Exhaustive, SearchStage::Exhaustive]);
    }
}
