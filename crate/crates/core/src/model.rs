//! Domain vocabulary: alternatives, criteria, decision makers and their
//! preference profiles.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{CoreError, Result};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

id_type!(
    /// Identifier of an alternative under decision.
    AlternativeId
);
id_type!(
    /// Identifier of an evaluation criterion.
    CriterionId
);
id_type!(
    /// Identifier of a decision maker.
    DmId
);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alternative {
    pub id: AlternativeId,
    #[serde(default)]
    pub name: String,
}

impl Alternative {
    pub fn new(id: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            id: AlternativeId::new(id),
            name: name.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: CriterionId,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
}

impl Criterion {
    pub fn new(id: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            id: CriterionId::new(id),
            name: name.into(),
            description: String::new(),
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Role {
    /// The elected anchor of the group; never revises.
    Sdm,
    #[default]
    Dm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionMaker {
    pub id: DmId,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub role: Role,
    #[serde(default)]
    pub reputation: f64,
}

impl DecisionMaker {
    pub fn new(id: impl Into<String>, name: impl Into<String>, reputation: f64) -> Self {
        Self {
            id: DmId::new(id),
            name: name.into(),
            role: Role::Dm,
            reputation,
        }
    }
}

/// Non-fatal observations about a profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileDiagnostic {
    /// Criterion weights sum above one, so evaluations (and distances) may
    /// leave the unit interval that `theta` is expressed in.
    WeightSumExceedsOne { sum: f64 },
}

impl fmt::Display for ProfileDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WeightSumExceedsOne { sum } => {
                write!(
                    f,
                    "criterion weights sum to {sum}, evaluations may exceed 1"
                )
            }
        }
    }
}

/// One decision maker's criterion weights and criterion x alternative scores.
///
/// Weights are not required to sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferenceProfile {
    pub dm_id: DmId,
    pub criterion_weights: BTreeMap<CriterionId, f64>,
    pub score_matrix: BTreeMap<CriterionId, BTreeMap<AlternativeId, f64>>,
}

impl PreferenceProfile {
    /// Builds a profile from a weight vector and a row-per-criterion score
    /// matrix, both ordered like `criteria` / `alternatives`.
    pub fn from_rows(
        dm_id: impl Into<DmId>,
        criteria: &[Criterion],
        alternatives: &[Alternative],
        weights: &[f64],
        rows: &[Vec<f64>],
    ) -> Result<Self> {
        if weights.len() != criteria.len() {
            return Err(CoreError::Shape(format!(
                "{} weights for {} criteria",
                weights.len(),
                criteria.len()
            )));
        }
        if rows.len() != criteria.len() {
            return Err(CoreError::Shape(format!(
                "{} score rows for {} criteria",
                rows.len(),
                criteria.len()
            )));
        }
        let mut criterion_weights = BTreeMap::new();
        let mut score_matrix = BTreeMap::new();
        for ((criterion, &weight), row) in criteria.iter().zip(weights).zip(rows) {
            if row.len() != alternatives.len() {
                return Err(CoreError::Shape(format!(
                    "row for {} has {} scores, expected {}",
                    criterion.id,
                    row.len(),
                    alternatives.len()
                )));
            }
            criterion_weights.insert(criterion.id.clone(), weight);
            let cells = alternatives
                .iter()
                .map(|a| a.id.clone())
                .zip(row.iter().copied())
                .collect();
            score_matrix.insert(criterion.id.clone(), cells);
        }
        Ok(Self {
            dm_id: dm_id.into(),
            criterion_weights,
            score_matrix,
        })
    }

    pub fn weight(&self, criterion: &CriterionId) -> Option<f64> {
        self.criterion_weights.get(criterion).copied()
    }

    pub fn score(&self, criterion: &CriterionId, alternative: &AlternativeId) -> Option<f64> {
        self.score_matrix.get(criterion)?.get(alternative).copied()
    }

    pub fn weight_sum(&self) -> f64 {
        self.criterion_weights.values().sum()
    }

    /// Checks completeness and ranges over `criteria x alternatives`.
    ///
    /// Extra keys are rejected so that a typo in an id cannot silently drop a
    /// score.
    pub fn validate(
        &self,
        criteria: &[Criterion],
        alternatives: &[Alternative],
    ) -> Result<Vec<ProfileDiagnostic>> {
        let dm = &self.dm_id;
        for key in self
            .criterion_weights
            .keys()
            .chain(self.score_matrix.keys())
        {
            if !criteria.iter().any(|c| &c.id == key) {
                return Err(CoreError::UnknownKey {
                    dm: dm.clone(),
                    key: format!("criterion {key}"),
                });
            }
        }
        for criterion in criteria {
            let c = &criterion.id;
            let weight = self.weight(c).ok_or_else(|| CoreError::IncompleteProfile {
                dm: dm.clone(),
                missing: format!("weight for criterion {c}"),
            })?;
            check_unit(dm, || format!("weight of criterion {c}"), weight)?;
            let row = self
                .score_matrix
                .get(c)
                .ok_or_else(|| CoreError::IncompleteProfile {
                    dm: dm.clone(),
                    missing: format!("scores for criterion {c}"),
                })?;
            for key in row.keys() {
                if !alternatives.iter().any(|a| &a.id == key) {
                    return Err(CoreError::UnknownKey {
                        dm: dm.clone(),
                        key: format!("alternative {key} under criterion {c}"),
                    });
                }
            }
            for alternative in alternatives {
                let a = &alternative.id;
                let score = row
                    .get(a)
                    .copied()
                    .ok_or_else(|| CoreError::IncompleteProfile {
                        dm: dm.clone(),
                        missing: format!("score ({c}, {a})"),
                    })?;
                check_unit(dm, || format!("score ({c}, {a})"), score)?;
            }
        }

        let sum = self.weight_sum();
        let mut diagnostics = Vec::new();
        if sum > 1.0 + crate::DEFAULT_EPSILON {
            diagnostics.push(ProfileDiagnostic::WeightSumExceedsOne { sum });
        }
        Ok(diagnostics)
    }
}

fn check_unit(dm: &DmId, key: impl FnOnce() -> String, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(CoreError::OutOfRange {
            dm: dm.clone(),
            key: key(),
            value,
        })
    }
}

/// Rejects duplicate ids within one list.
pub(crate) fn ensure_unique<'a, I>(kind: &str, ids: I) -> Result<()>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut seen = std::collections::HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(CoreError::DuplicateId(format!("{kind} {id}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked_example;

    #[test]
    fn worked_profiles_validate_without_diagnostics() {
        let criteria = worked_example::criteria();
        let alternatives = worked_example::alternatives();
        for profile in worked_example::initial_profiles() {
            assert_eq!(profile.validate(&criteria, &alternatives).unwrap(), vec![]);
        }
    }

    #[test]
    fn missing_cell_is_named() {
        let criteria = worked_example::criteria();
        let alternatives = worked_example::alternatives();
        let mut profile = worked_example::initial_profiles().remove(0);
        profile
            .score_matrix
            .get_mut(&CriterionId::from("c2"))
            .unwrap()
            .remove("a4");
        let err = profile.validate(&criteria, &alternatives).unwrap_err();
        assert_eq!(
            err,
            CoreError::IncompleteProfile {
                dm: "DM1".into(),
                missing: "score (c2, a4)".into()
            }
        );
    }

    #[test]
    fn missing_weight_is_named() {
        let criteria = worked_example::criteria();
        let alternatives = worked_example::alternatives();
        let mut profile = worked_example::initial_profiles().remove(0);
        profile.criterion_weights.remove("c3");
        let err = profile.validate(&criteria, &alternatives).unwrap_err();
        assert!(err.to_string().contains("weight for criterion c3"), "{err}");
    }

    #[test]
    fn out_of_range_and_nan_rejected() {
        let criteria = worked_example::criteria();
        let alternatives = worked_example::alternatives();
        for bad in [1.2, -0.1, f64::NAN] {
            let mut profile = worked_example::initial_profiles().remove(1);
            *profile
                .score_matrix
                .get_mut("c1")
                .unwrap()
                .get_mut("a2")
                .unwrap() = bad;
            assert!(matches!(
                profile.validate(&criteria, &alternatives),
                Err(CoreError::OutOfRange { .. })
            ));
        }
    }

    #[test]
    fn unknown_alternative_rejected() {
        let criteria = worked_example::criteria();
        let alternatives = worked_example::alternatives();
        let mut profile = worked_example::initial_profiles().remove(0);
        profile
            .score_matrix
            .get_mut("c1")
            .unwrap()
            .insert("a9".into(), 0.5);
        assert!(matches!(
            profile.validate(&criteria, &alternatives),
            Err(CoreError::UnknownKey { .. })
        ));
    }

    #[test]
    fn heavy_weights_warn() {
        let criteria = worked_example::criteria();
        let alternatives = worked_example::alternatives();
        let rows = vec![vec![0.5; 5]; 3];
        let profile =
            PreferenceProfile::from_rows("x", &criteria, &alternatives, &[0.6, 0.6, 0.2], &rows)
                .unwrap();
        let diagnostics = profile.validate(&criteria, &alternatives).unwrap();
        assert_eq!(diagnostics.len(), 1);
        assert!(matches!(
            diagnostics[0],
            ProfileDiagnostic::WeightSumExceedsOne { .. }
        ));
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let criteria = worked_example::criteria();
        let alternatives = worked_example::alternatives();
        let rows = vec![vec![0.5; 5], vec![0.5; 4], vec![0.5; 5]];
        assert!(matches!(
            PreferenceProfile::from_rows("x", &criteria, &alternatives, &[0.1, 0.1, 0.1], &rows),
            Err(CoreError::Shape(_))
        ));
    }
}
