//! Discrete input scale for scores. The engine itself accepts any value in
//! `[0, 1]`; the scale is an input convention for forms and generators.

use serde::{Deserialize, Serialize};

use crate::{CoreError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreLevel {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ScoreLevel>", into = "Vec<ScoreLevel>")]
pub struct ScoreScale {
    levels: Vec<ScoreLevel>,
}

impl ScoreScale {
    /// Levels must be non-empty, inside `[0, 1]` and strictly decreasing.
    pub fn new(levels: Vec<ScoreLevel>) -> Result<Self> {
        if levels.is_empty() {
            return Err(CoreError::Domain("score scale has no levels".into()));
        }
        for level in &levels {
            if !(0.0..=1.0).contains(&level.value) {
                return Err(CoreError::Domain(format!(
                    "score level {:?} has value {} outside [0, 1]",
                    level.label, level.value
                )));
            }
        }
        if levels.windows(2).any(|w| w[0].value <= w[1].value) {
            return Err(CoreError::Domain(
                "score levels must be strictly decreasing".into(),
            ));
        }
        Ok(Self { levels })
    }

    pub fn levels(&self) -> &[ScoreLevel] {
        &self.levels
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels.iter().map(|l| l.value)
    }

    pub fn value_of(&self, label: &str) -> Option<f64> {
        self.levels
            .iter()
            .find(|l| l.label == label)
            .map(|l| l.value)
    }

    pub fn contains(&self, value: f64) -> bool {
        self.levels.iter().any(|l| l.value == value)
    }
}

impl Default for ScoreScale {
    fn default() -> Self {
        let levels = [
            ("very high", 1.0),
            ("high", 0.7),
            ("moderate", 0.5),
            ("low", 0.3),
        ]
        .into_iter()
        .map(|(label, value)| ScoreLevel {
            label: label.into(),
            value,
        })
        .collect();
        Self { levels }
    }
}

impl TryFrom<Vec<ScoreLevel>> for ScoreScale {
    type Error = CoreError;

    fn try_from(levels: Vec<ScoreLevel>) -> Result<Self> {
        Self::new(levels)
    }
}

impl From<ScoreScale> for Vec<ScoreLevel> {
    fn from(scale: ScoreScale) -> Self {
        scale.levels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_scale_has_four_levels() {
        let scale = ScoreScale::default();
        assert_eq!(scale.values().collect::<Vec<_>>(), vec![1.0, 0.7, 0.5, 0.3]);
        assert_eq!(scale.value_of("moderate"), Some(0.5));
        assert!(ScoreScale::new(scale.levels().to_vec()).is_ok());
    }

    #[test]
    fn rejects_non_decreasing_levels() {
        let levels = vec![
            ScoreLevel {
                label: "a".into(),
                value: 0.5,
            },
            ScoreLevel {
                label: "b".into(),
                value: 0.5,
            },
        ];
        assert!(ScoreScale::new(levels).is_err());
        assert!(serde_json::from_str::<ScoreScale>(r#"[{"label":"x","value":1.5}]"#).is_err());
    }
}
