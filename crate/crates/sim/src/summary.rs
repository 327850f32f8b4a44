use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{ReplicationResult, Result, SimError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub replications: Vec<ReplicationResult>,
    pub converged_count: usize,
    /// `converged_count / replications.len()`.
    pub convergence_rate: f64,
    /// Mean and median of `rounds_used` over all replications.
    pub mean_rounds: f64,
    pub median_rounds: f64,
    /// rounds used -> number of replications.
    pub rounds_histogram: BTreeMap<u32, usize>,
}

pub fn summarize(mut replications: Vec<ReplicationResult>) -> Result<SimulationSummary> {
    if replications.is_empty() {
        return Err(SimError::Domain("no replications to summarize".into()));
    }
    replications.sort_by_key(|r| r.index);
    let n = replications.len();
    let converged_count = replications.iter().filter(|r| r.converged).count();

    let mut rounds: Vec<u32> = replications.iter().map(|r| r.rounds_used).collect();
    rounds.sort_unstable();
    let mean_rounds = rounds.iter().map(|&r| f64::from(r)).sum::<f64>() / n as f64;
    let median_rounds = if n % 2 == 1 {
        f64::from(rounds[n / 2])
    } else {
        (f64::from(rounds[n / 2 - 1]) + f64::from(rounds[n / 2])) / 2.0
    };
    let mut rounds_histogram = BTreeMap::new();
    for r in &rounds {
        *rounds_histogram.entry(*r).or_insert(0) += 1;
    }

    Ok(SimulationSummary {
        converged_count,
        convergence_rate: converged_count as f64 / n as f64,
        mean_rounds,
        median_rounds,
        rounds_histogram,
        replications,
    })
}

impl SimulationSummary {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("summary serializes");
        text.push('\n');
        text
    }

    /// One row per replication: index, converged, rounds_used, top-ranked
    /// alternative.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(["index", "converged", "rounds_used", "top_alternative"])?;
        for r in &self.replications {
            writer.write_record([
                r.index.to_string(),
                r.converged.to_string(),
                r.rounds_used.to_string(),
                r.top().map(|a| a.to_string()).unwrap_or_default(),
            ])?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| SimError::Domain(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}
