//! Exhaustive verification harness: run an algorithm from every connected
//! initial configuration and summarize the outcomes.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::config::{enumerate_connected, CanonicalConfiguration};
use crate::engine::{self, AllStay, Decide, Outcome, Trace, VisibilityRange};
use crate::error::Error;
use crate::gather2::{Gather2, ALGORITHM_ID as GATHER2_ID};

/// Robot count for which gathering is defined.
pub const GATHERING_ROBOTS: usize = 7;

pub const KNOWN_ALGORITHMS: [&str; 2] = [GATHER2_ID, "all-stay"];

/// Looks up a built-in algorithm by its identifier.
pub fn algorithm_by_id(id: &str) -> Result<Box<dyn Decide>, Error> {
    match id {
        GATHER2_ID => Ok(Box::new(Gather2)),
        "all-stay" => Ok(Box::new(AllStay(VisibilityRange::Two))),
        other => Err(Error::UnknownAlgorithm(other.to_string())),
    }
}

#[derive(Clone, Debug)]
pub struct RunRecord {
    /// Position in the sorted enumeration.
    pub config_id: usize,
    pub config: CanonicalConfiguration,
    pub trace: Trace,
}

impl RunRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.config_id,
            self.trace.outcome,
            self.trace.step_count(),
            self.trace.always_connected()
        )
    }
}

#[derive(Clone, Debug)]
pub struct VerificationSummary {
    pub n: usize,
    pub algorithm: String,
    pub total: usize,
    pub gathered: usize,
    /// Config ids whose run did not end in `Gathered`, ascending.
    pub failures: Vec<usize>,
    pub max_steps_observed: usize,
    pub wall_time: Duration,
    /// Gathering is only defined for seven robots; other sizes are reported
    /// without a pass/fail verdict.
    pub informational: bool,
    /// One record per configuration, in enumeration order.
    pub records: Vec<RunRecord>,
}

pub const CSV_HEADER: &str = "config_id,outcome,steps,min_connected";

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.informational || self.failures.is_empty()
    }

    pub fn failed_records(&self) -> impl Iterator<Item = &RunRecord> {
        self.failures.iter().map(|&i| &self.records[i])
    }

    /// Outcome name → count, sorted by name.
    pub fn outcome_counts(&self) -> Vec<(String, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for r in &self.records {
            *counts.entry(r.trace.outcome.name().to_string()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algorithm={} n={}", self.algorithm, self.n);
        let _ = writeln!(
            out,
            "total={} gathered={} failures={}",
            self.total,
            self.gathered,
            self.failures.len()
        );
        for (name, count) in self.outcome_counts() {
            let _ = writeln!(out, "  {name}: {count}");
        }
        let _ = writeln!(out, "max_steps_observed={}", self.max_steps_observed);
        let _ = writeln!(out, "wall_time_ms={}", self.wall_time.as_millis());
        if self.informational {
            let _ = writeln!(
                out,
                "informational: gathering is defined for {GATHERING_ROBOTS} robots only"
            );
        }
        for r in self.failed_records().take(20) {
            let _ = writeln!(
                out,
                "FAIL id={} outcome={} config={}",
                r.config_id, r.trace.outcome, r.config
            );
        }
        if self.failures.len() > 20 {
            let _ = writeln!(out, "... {} more failures", self.failures.len() - 20);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "algorithm": self.algorithm,
            "n": self.n,
            "total": self.total,
            "gathered": self.gathered,
            "failures": self.failed_records().map(|r| serde_json::json!({
                "config_id": r.config_id,
                "config": r.config.to_json(),
                "outcome": r.trace.outcome.to_string(),
                "steps": r.trace.step_count(),
            })).collect::<Vec<_>>(),
            "max_steps_observed": self.max_steps_observed,
            "wall_time_ms": self.wall_time.as_millis() as u64,
            "informational": self.informational,
        })
    }
}

/// Runs `f` from every connected `n`-robot configuration.
///
/// `jobs` bounds the worker count (`None` = all cores). Records come back
/// in enumeration order regardless of scheduling.
pub fn verify(n: usize, f: &dyn Decide, max_steps: usize, jobs: Option<usize>) -> Result<VerificationSummary, Error> {
    let started = Instant::now();
    let configs = enumerate_connected(n)?;
    let work = || -> Result<Vec<RunRecord>, Error> {
        configs
            .par_iter()
            .enumerate()
            .map(|(config_id, c)| {
                Ok(RunRecord {
                    config_id,
                    config: c.clone(),
                    trace: engine::run(c, f, max_steps)?,
                })
            })
            .collect()
    };
    let records = match jobs {
        None => work()?,
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work)?,
    };
    let failures: Vec<usize> = records
        .iter()
        .filter(|r| !matches!(r.trace.outcome, Outcome::Gathered))
        .map(|r| r.config_id)
        .collect();
    Ok(VerificationSummary {
        n,
        algorithm: f.id().to_string(),
        total: records.len(),
        gathered: records.len() - failures.len(),
        failures,
        max_steps_observed: records.iter().map(|r| r.trace.step_count()).max().unwrap_or(0),
        wall_time: started.elapsed(),
        informational: n != GATHERING_ROBOTS,
        records,
    })
}
