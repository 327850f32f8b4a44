//! Group-level consensus settings.

use serde::{Deserialize, Serialize};

use crate::{CoreError, Result, DEFAULT_EPSILON};

/// How the exponential decay is applied to the excess distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SocialMode {
    /// `w' = exp(-excess)`; reproduces the published tables.
    #[default]
    WorkedExample,
    /// `w' = exp(-theta * excess)`; the social function as written.
    Literal,
}

/// Rule deciding when a decision maker is consonant with the SDM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MajorityRule {
    /// At least `ceil(|A| / 2)` alternatives within tolerance.
    #[default]
    CeilHalf,
}

pub const DEFAULT_MAX_ROUNDS: u32 = 10;

/// Returns the largest tolerated per-alternative distance, `1 - theta`.
pub fn max_distance_from_theta(theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(CoreError::Domain(format!(
            "consensus level {theta} outside [0, 1]"
        )));
    }
    Ok(1.0 - theta)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct ConsensusConfig {
    theta: f64,
    max_distance: f64,
    social_mode: SocialMode,
    majority_rule: MajorityRule,
    max_rounds: u32,
    epsilon: f64,
}

impl ConsensusConfig {
    pub fn new(theta: f64) -> Result<Self> {
        Ok(Self {
            theta,
            max_distance: max_distance_from_theta(theta)?,
            social_mode: SocialMode::default(),
            majority_rule: MajorityRule::default(),
            max_rounds: DEFAULT_MAX_ROUNDS,
            epsilon: DEFAULT_EPSILON,
        })
    }

    pub fn with_social_mode(mut self, mode: SocialMode) -> Self {
        self.social_mode = mode;
        self
    }

    pub fn with_max_rounds(mut self, max_rounds: u32) -> Result<Self> {
        if max_rounds == 0 {
            return Err(CoreError::Domain("max_rounds must be positive".into()));
        }
        self.max_rounds = max_rounds;
        Ok(self)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(CoreError::Domain(format!(
                "epsilon {epsilon} must be finite and >= 0"
            )));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn max_distance(&self) -> f64 {
        self.max_distance
    }

    pub fn social_mode(&self) -> SocialMode {
        self.social_mode
    }

    pub fn majority_rule(&self) -> MajorityRule {
        self.majority_rule
    }

    pub fn max_rounds(&self) -> u32 {
        self.max_rounds
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Wire form; `max_distance` may be omitted but must equal `1 - theta` when
/// present.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    theta: f64,
    #[serde(default)]
    max_distance: Option<f64>,
    #[serde(default)]
    social_mode: SocialMode,
    #[serde(default)]
    majority_rule: MajorityRule,
    #[serde(default = "default_max_rounds")]
    max_rounds: u32,
    #[serde(default = "default_epsilon")]
    epsilon: f64,
}

fn default_max_rounds() -> u32 {
    DEFAULT_MAX_ROUNDS
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

impl TryFrom<RawConfig> for ConsensusConfig {
    type Error = CoreError;

    fn try_from(raw: RawConfig) -> Result<Self> {
        let mut config = ConsensusConfig::new(raw.theta)?
            .with_social_mode(raw.social_mode)
            .with_max_rounds(raw.max_rounds)?
            .with_epsilon(raw.epsilon)?;
        config.majority_rule = raw.majority_rule;
        if let Some(declared) = raw.max_distance {
            if declared != config.max_distance {
                return Err(CoreError::Domain(format!(
                    "max_distance {declared} does not equal 1 - theta = {}",
                    config.max_distance
                )));
            }
        }
        Ok(config)
    }
}
