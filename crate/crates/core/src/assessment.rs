//! Per-alternative consensus check of one decision maker against the SDM.

use serde::{Deserialize, Serialize};

use crate::config::ConsensusConfig;
use crate::distance::per_alternative_distance;
use crate::evaluation::EvaluationVector;
use crate::model::{AlternativeId, DmId};
use crate::social::{social_weight, within_tolerance};
use crate::{CoreError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternativeAssessment {
    pub alternative: AlternativeId,
    pub distance: f64,
    /// `max(0, distance - max_distance)`, zero whenever in consensus.
    pub excess: f64,
    pub in_consensus: bool,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsensusAssessment {
    pub dm_id: DmId,
    pub alternatives: Vec<AlternativeAssessment>,
    pub consensus_count: usize,
    pub majority_reached: bool,
}

impl ConsensusAssessment {
    pub fn get(&self, alternative: &AlternativeId) -> Option<&AlternativeAssessment> {
        self.alternatives
            .iter()
            .find(|a| &a.alternative == alternative)
    }

    pub fn weight(&self, alternative: &AlternativeId) -> Option<f64> {
        self.get(alternative).map(|a| a.weight)
    }

    pub fn consonant_alternatives(&self) -> impl Iterator<Item = &AlternativeId> {
        self.alternatives
            .iter()
            .filter(|a| a.in_consensus)
            .map(|a| &a.alternative)
    }
}

/// `true` iff `consensus_count >= ceil(alternative_count / 2)`.
pub fn majority_reached(consensus_count: usize, alternative_count: usize) -> Result<bool> {
    if alternative_count == 0 {
        return Err(CoreError::Domain(
            "decision problem has no alternatives".into(),
        ));
    }
    if consensus_count > alternative_count {
        return Err(CoreError::Domain(format!(
            "consensus count {consensus_count} exceeds {alternative_count} alternatives"
        )));
    }
    Ok(consensus_count >= alternative_count.div_ceil(2))
}

/// Compares `f_i` with the SDM's `f_sdm` alternative by alternative, in the
/// SDM's alternative order.
pub fn assess(
    f_i: &EvaluationVector,
    f_sdm: &EvaluationVector,
    config: &ConsensusConfig,
) -> Result<ConsensusAssessment> {
    if !f_i.same_alternatives(f_sdm) {
        return Err(CoreError::Shape(format!(
            "evaluations of {} and {} cover different alternatives",
            f_i.dm_id, f_sdm.dm_id
        )));
    }
    let mut alternatives = Vec::with_capacity(f_sdm.len());
    for alternative in f_sdm.alternatives() {
        let distance = per_alternative_distance(f_i, f_sdm, alternative)?;
        let in_consensus = within_tolerance(distance, config);
        let excess = if in_consensus {
            0.0
        } else {
            (distance - config.max_distance()).max(0.0)
        };
        alternatives.push(AlternativeAssessment {
            alternative: alternative.clone(),
            distance,
            excess,
            in_consensus,
            weight: social_weight(distance, config)?,
        });
    }
    let consensus_count = alternatives.iter().filter(|a| a.in_consensus).count();
    Ok(ConsensusAssessment {
        dm_id: f_i.dm_id.clone(),
        majority_reached: majority_reached(consensus_count, alternatives.len())?,
        consensus_count,
        alternatives,
    })
}
