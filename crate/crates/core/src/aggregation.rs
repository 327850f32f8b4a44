//! Weighted aggregation of all evaluations into group totals and a ranking.

use std::cmp::Ordering;
use std::collections::HashSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::assessment::ConsensusAssessment;
use crate::evaluation::EvaluationVector;
use crate::model::{AlternativeId, DmId};
use crate::{CoreError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregationResult {
    /// Weight applied to each (decision maker, alternative) evaluation.
    pub weights: IndexMap<DmId, IndexMap<AlternativeId, f64>>,
    /// `w'_i(a) * f_i(a)`.
    pub contributions: IndexMap<DmId, IndexMap<AlternativeId, f64>>,
    /// Column sums of `contributions`.
    pub totals: IndexMap<AlternativeId, f64>,
    /// Best first.
    pub ranking: Vec<AlternativeId>,
    /// Set when aggregation happened at the round limit without consensus.
    #[serde(default)]
    pub forced: bool,
}

/// Sums `w' * f` over every decision maker, the SDM included with weight 1.
///
/// Alternatives are ordered as in the SDM's evaluation, which also fixes the
/// tie-break order of the ranking.
pub fn aggregate(
    evaluations: &[EvaluationVector],
    assessments: &[ConsensusAssessment],
    sdm_id: &DmId,
) -> Result<AggregationResult> {
    let mut seen = HashSet::new();
    for evaluation in evaluations {
        if !seen.insert(&evaluation.dm_id) {
            return Err(CoreError::DuplicateId(format!(
                "evaluation for {}",
                evaluation.dm_id
            )));
        }
    }
    let sdm = evaluations
        .iter()
        .find(|e| &e.dm_id == sdm_id)
        .ok_or_else(|| CoreError::IncompleteRound {
            missing: vec![sdm_id.clone()],
        })?;

    let missing: Vec<DmId> = evaluations
        .iter()
        .filter(|e| &e.dm_id != sdm_id)
        .filter(|e| !assessments.iter().any(|a| a.dm_id == e.dm_id))
        .map(|e| e.dm_id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(CoreError::IncompleteRound { missing });
    }

    let mut totals: IndexMap<AlternativeId, f64> =
        sdm.alternatives().map(|a| (a.clone(), 0.0)).collect();
    let mut weights = IndexMap::with_capacity(evaluations.len());
    let mut contributions = IndexMap::with_capacity(evaluations.len());

    for evaluation in evaluations {
        if !evaluation.same_alternatives(sdm) {
            return Err(CoreError::Shape(format!(
                "evaluation of {} covers different alternatives than the SDM's",
                evaluation.dm_id
            )));
        }
        let assessment = assessments.iter().find(|a| a.dm_id == evaluation.dm_id);
        let mut row_weights = IndexMap::with_capacity(totals.len());
        let mut row = IndexMap::with_capacity(totals.len());
        for (alternative, total) in totals.iter_mut() {
            let weight = if &evaluation.dm_id == sdm_id {
                1.0
            } else {
                assessment
                    .and_then(|a| a.weight(alternative))
                    .ok_or_else(|| CoreError::UnknownAlternative(alternative.clone()))?
            };
            let contribution = weight * evaluation.values[alternative];
            *total += contribution;
            row_weights.insert(alternative.clone(), weight);
            row.insert(alternative.clone(), contribution);
        }
        weights.insert(evaluation.dm_id.clone(), row_weights);
        contributions.insert(evaluation.dm_id.clone(), row);
    }

    let ranking = rank(&totals)?;
    Ok(AggregationResult {
        weights,
        contributions,
        totals,
        ranking,
        forced: false,
    })
}

/// Orders alternatives by total, highest first; exact ties keep the
/// alternatives' listed order.
pub fn rank(totals: &IndexMap<AlternativeId, f64>) -> Result<Vec<AlternativeId>> {
    if totals.is_empty() {
        return Err(CoreError::Domain("nothing to rank".into()));
    }
    if let Some((alternative, _)) = totals.iter().find(|(_, t)| t.is_nan()) {
        return Err(CoreError::Domain(format!("total for {alternative} is NaN")));
    }
    let mut order: Vec<(usize, &AlternativeId, f64)> = totals
        .iter()
        .enumerate()
        .map(|(i, (a, t))| (i, a, *t))
        .collect();
    order.sort_by(|x, y| match y.2.partial_cmp(&x.2) {
        Some(Ordering::Equal) | None => x.0.cmp(&y.0),
        Some(ord) => ord,
    });
    Ok(order.into_iter().map(|(_, a, _)| a.clone()).collect())
}
