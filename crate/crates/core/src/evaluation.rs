//! Weighted-sum evaluation of each alternative by one decision maker.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::model::{ensure_unique, Alternative, AlternativeId, Criterion, DmId, PreferenceProfile};
use crate::{CoreError, Result};

/// Per-alternative evaluation `f_i(a)`, in alternative order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationVector {
    pub dm_id: DmId,
    pub values: IndexMap<AlternativeId, f64>,
}

impl EvaluationVector {
    pub fn new(
        dm_id: impl Into<DmId>,
        values: impl IntoIterator<Item = (AlternativeId, f64)>,
    ) -> Self {
        Self {
            dm_id: dm_id.into(),
            values: values.into_iter().collect(),
        }
    }

    pub fn get(&self, alternative: &AlternativeId) -> Option<f64> {
        self.values.get(alternative).copied()
    }

    pub fn alternatives(&self) -> impl Iterator<Item = &AlternativeId> {
        self.values.keys()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same alternative set, irrespective of order.
    pub(crate) fn same_alternatives(&self, other: &EvaluationVector) -> bool {
        self.len() == other.len() && self.alternatives().all(|a| other.values.contains_key(a))
    }
}

/// `f(a) = sum_c h(c) * g(c, a)` for every alternative, summing criteria in
/// list order.
pub fn evaluate(
    profile: &PreferenceProfile,
    criteria: &[Criterion],
    alternatives: &[Alternative],
) -> Result<EvaluationVector> {
    ensure_unique("criterion", criteria.iter().map(|c| c.id.as_str()))?;
    ensure_unique("alternative", alternatives.iter().map(|a| a.id.as_str()))?;
    profile.validate(criteria, alternatives)?;

    let mut values = IndexMap::with_capacity(alternatives.len());
    for alternative in alternatives {
        let mut total = 0.0;
        for criterion in criteria {
            let weight = profile
                .weight(&criterion.id)
                .ok_or_else(|| missing(profile, "weight"))?;
            let score = profile
                .score(&criterion.id, &alternative.id)
                .ok_or_else(|| missing(profile, "score"))?;
            total += weight * score;
        }
        values.insert(alternative.id.clone(), total);
    }
    Ok(EvaluationVector {
        dm_id: profile.dm_id.clone(),
        values,
    })
}

fn missing(profile: &PreferenceProfile, what: &str) -> CoreError {
    CoreError::IncompleteProfile {
        dm: profile.dm_id.clone(),
        missing: what.into(),
    }
}
