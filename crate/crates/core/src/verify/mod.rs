//! Finite-range verification of the classification theorems, and
//! counterexample searches for the open conjectures.
//!
//! Every check evaluates its claim on each instance of a finite family and
//! stops at nothing: all instances run (in parallel), and the first failing
//! instance in enumeration order becomes the reported counterexample.
//! Conjecture searches never fail; they report.

mod checks;
mod conjectures;
mod families;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

pub use families::{graphs_for_order, rooted_trees, unlabeled_trees, GraphSource};

use crate::error::{Error, Result};

pub const CHECK_IDS: &[&str] = &[
    "expelling-bipartite",
    "complete",
    "cycles",
    "wedge",
    "union",
    "rev-cycles",
    "wedge-complete-orbit",
    "complete-tree",
    "multitree",
    "local-config",
    "compl-components",
    "compl-complete",
    "compl-bipartite",
    "mat-cycle",
];

pub const CONJECTURE_IDS: &[&str] = &["wedge-nonensnaring", "compl-parity", "compl-tree", "orbit-sizes"];

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_SAMPLES: usize = 200;

/// Range parameters shared by checks and conjectures. Unset fields fall back
/// to per-check defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Params {
    pub min_n: Option<usize>,
    pub max_n: Option<usize>,
    /// Size bound for the building blocks (wedge parts, trees, complemented graphs).
    pub max_part: Option<usize>,
    /// Fixed `m` for orbit-sizes.
    pub m: Option<usize>,
    /// Fixed `n` for orbit-sizes.
    pub n: Option<usize>,
    pub seed: u64,
    /// Random instances per order where exhaustive search is out of reach.
    pub samples: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            min_n: None,
            max_n: None,
            max_part: None,
            m: None,
            n: None,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl Params {
    pub fn with_max_n(max_n: usize) -> Self {
        Params {
            max_n: Some(max_n),
            ..Params::default()
        }
    }

    pub(crate) fn range(&self, lo: usize, hi: usize, ceiling: usize) -> Result<(usize, usize)> {
        let lo = self.min_n.unwrap_or(lo);
        let hi = self.max_n.unwrap_or(hi);
        if hi > ceiling {
            return Err(Error::OutOfRange(format!(
                "this search supports n <= {ceiling} (got {hi})"
            )));
        }
        Ok((lo, hi))
    }
}

/// A failing instance, replayable through `parse_spec` and `classify`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    /// Graph in `edges:` spec form.
    pub graph: String,
    pub detail: String,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub id: String,
    pub range: String,
    pub instances: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    /// Seed used for any sampled part of the range.
    pub seed: Option<u64>,
    pub duration_ms: u64,
}

impl CheckReport {
    pub fn summary_line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{verdict} {} [{}] instances={}", self.id, self.range, self.instances);
        if let Some(seed) = self.seed {
            line.push_str(&format!(" seed={seed}"));
        }
        if let Some(c) = &self.counterexample {
            line.push_str(&format!(" counterexample={} ({})", c.graph, c.detail));
        }
        line
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjectureStatus {
    Consistent,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConjectureReport {
    pub id: String,
    pub search_space: String,
    pub instances: u64,
    pub counterexamples: Vec<Counterexample>,
    pub status: ConjectureStatus,
    pub seed: Option<u64>,
    pub duration_ms: u64,
}

impl ConjectureReport {
    pub fn summary_line(&self) -> String {
        let status = match self.status {
            ConjectureStatus::Consistent => "CONSISTENT",
            ConjectureStatus::Refuted => "REFUTED",
        };
        let mut line = format!(
            "{status} {} [{}] instances={} counterexamples={}",
            self.id,
            self.search_space,
            self.instances,
            self.counterexamples.len()
        );
        if let Some(c) = self.counterexamples.first() {
            line.push_str(&format!(" first={} ({})", c.graph, c.detail));
        }
        line
    }
}

/// Outcome of a family evaluation before it is wrapped into a report.
pub(crate) struct Tally {
    pub range: String,
    pub instances: u64,
    pub failures: Vec<Counterexample>,
    pub seed: Option<u64>,
}

/// Evaluates `f` on every item in parallel and keeps failures in item order.
pub(crate) fn evaluate<T, F>(items: &[T], f: F) -> Result<(u64, Vec<Counterexample>)>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<Counterexample>> + Sync,
{
    let results: Vec<Result<Option<Counterexample>>> = items.par_iter().map(&f).collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(c) = r? {
            failures.push(c);
        }
    }
    Ok((items.len() as u64, failures))
}

pub fn run_check(id: &str, params: &Params) -> Result<CheckReport> {
    let start = Instant::now();
    let tally = checks::dispatch(id, params)?;
    Ok(CheckReport {
        id: id.to_string(),
        range: tally.range,
        instances: tally.instances,
        passed: tally.failures.is_empty(),
        counterexample: tally.failures.into_iter().next(),
        seed: tally.seed,
        duration_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_conjecture(id: &str, params: &Params) -> Result<ConjectureReport> {
    let start = Instant::now();
    let tally = conjectures::dispatch(id, params)?;
    Ok(ConjectureReport {
        id: id.to_string(),
        search_space: tally.range,
        instances: tally.instances,
        status: if tally.failures.is_empty() {
            ConjectureStatus::Consistent
        } else {
            ConjectureStatus::Refuted
        },
        counterexamples: tally.failures,
        seed: tally.seed,
        duration_ms: start.elapsed().as_millis() as u64,
    })
}
