use rayon::prelude::*;
use sdm_core::AlternativeId;
use serde::{Deserialize, Serialize};

use crate::instance::{generate_with_rng, replication_rng};
use crate::{apply_strategy, summarize, Result, SimError, SimulationSpec, SimulationSummary};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationResult {
    pub index: usize,
    pub converged: bool,
    /// Number of assessment rounds computed.
    pub rounds_used: u32,
    /// Final ranking, best first (forced when not converged).
    pub ranking: Vec<AlternativeId>,
}

impl ReplicationResult {
    pub fn top(&self) -> Option<&AlternativeId> {
        self.ranking.first()
    }
}

/// Drives one replication: assess, let every flagged agent apply its
/// strategy, repeat until everyone is consonant or the round limit is hit,
/// then finalize.
pub fn run_replication(spec: &SimulationSpec, index: usize) -> Result<ReplicationResult> {
    let mut rng = replication_rng(spec.seed, index);
    let mut session = generate_with_rng(spec, index, &mut rng)?;
    let dm_index: Vec<_> = session
        .participants()
        .iter()
        .map(|p| p.id.clone())
        .collect();

    let converged = loop {
        let report = session.compute_round()?;
        if report.all_majority {
            break true;
        }
        if session.round() >= spec.max_rounds {
            break false;
        }
        let sdm_profile = session
            .profile(session.sdm_id())
            .cloned()
            .ok_or_else(|| SimError::Domain("SDM has no profile".into()))?;
        for dm in &report.must_revise {
            let position = dm_index
                .iter()
                .position(|id| id == dm)
                .expect("participant");
            let own = session.profile(dm).cloned().expect("submitted");
            let revised =
                apply_strategy(&spec.strategy_for(position), &own, &sdm_profile, &mut rng)?;
            session.revise_preferences(dm, revised)?;
        }
    };
    let result = session.finalize()?;
    Ok(ReplicationResult {
        index,
        converged,
        rounds_used: session.round(),
        ranking: result.ranking,
    })
}

/// Runs every replication (in parallel) and summarizes them in index order.
pub fn run_simulation(spec: &SimulationSpec) -> Result<SimulationSummary> {
    spec.validate()?;
    let results = (0..spec.replications)
        .into_par_iter()
        .map(|i| run_replication(spec, i))
        .collect::<Result<Vec<_>>>()?;
    summarize(results)
}
