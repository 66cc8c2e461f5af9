//! JSON run report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LoopResult;
use crate::rational::{rationalize, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundJson {
    pub round: usize,
    pub bound: f64,
    pub cuts: BTreeMap<String, usize>,
    pub max_violation: f64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance: String,
    pub rounds: Vec<RoundJson>,
    pub final_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_optimum: Option<f64>,
    /// `(final - initial) / (optimum - initial)`; `null` without an optimum.
    pub gap_closed: Option<f64>,
}

impl Report {
    pub fn new(instance: impl Into<String>, result: &LoopResult, oracle_optimum: Option<&Rational>) -> Self {
        let rounds = result
            .rounds
            .iter()
            .map(|r| RoundJson {
                round: r.round,
                bound: r.bound,
                cuts: r.cuts.iter().map(|(f, n)| (f.tag().to_string(), *n)).collect(),
                max_violation: to_f64(&r.max_violation),
                wall_ms: r.wall_time.as_secs_f64() * 1e3,
            })
            .collect();
        let opt = oracle_optimum.map(to_f64);
        let last = result.final_bound();
        // exact bounds where available so a closed gap reads exactly 1
        let exact = |r: Option<&super::RoundReport>| {
            r.map(|r| r.exact_bound.clone().unwrap_or_else(|| rationalize(r.bound, 1_000_000)))
        };
        let gap_closed = match (exact(result.rounds.first()), exact(result.rounds.last()), oracle_optimum) {
            (Some(first), Some(end), Some(o)) => Some(exact_gap_closed(&first, &end, o)),
            _ => None,
        };
        Report {
            instance: instance.into(),
            rounds,
            final_bound: last,
            oracle_optimum: opt,
            gap_closed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Exact counterpart of [`gap_closed`].
pub fn exact_gap_closed(initial: &Rational, last: &Rational, optimum: &Rational) -> f64 {
    if optimum == initial {
        1.0
    } else {
        to_f64(&((last - initial) / (optimum - initial)))
    }
}

/// Fraction of the LP-to-optimum gap closed by cuts; 1 when there was no gap.
pub fn gap_closed(initial: f64, last: f64, optimum: f64) -> f64 {
    let gap = optimum - initial;
    if gap.abs() <= 1e-9 * optimum.abs().max(1.0) {
        1.0
    } else {
        (last - initial) / gap
    }
}
