use sdm_core::{ConsensusConfig, SocialMode};
use serde::{Deserialize, Serialize};

use crate::{Result, SimError};

/// How a synthetic decision maker answers a revision request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AgentStrategy {
    /// Resubmits the same profile.
    Stubborn,
    /// Moves every weight and score a fraction `step` of the way to the SDM.
    Conformist { step: f64 },
    /// Conformist move followed by a uniform perturbation in
    /// `[-sigma, sigma]`, clamped back to `[0, 1]`.
    Noisy {
        sigma: f64,
        #[serde(default = "default_noisy_step")]
        step: f64,
    },
}

fn default_noisy_step() -> f64 {
    0.5
}

impl AgentStrategy {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            AgentStrategy::Stubborn => true,
            AgentStrategy::Conformist { step } => step > 0.0 && step <= 1.0,
            AgentStrategy::Noisy { sigma, step } => {
                sigma >= 0.0 && sigma.is_finite() && step > 0.0 && step <= 1.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(SimError::InvalidSpec(format!("invalid strategy {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSpec {
    pub dm_count: usize,
    pub alternative_count: usize,
    pub criterion_count: usize,
    pub theta: f64,
    #[serde(default)]
    pub social_mode: SocialMode,
    /// One strategy per decision maker, or a single strategy shared by all.
    /// The elected SDM's entry is never used.
    pub strategies: Vec<AgentStrategy>,
    pub seed: u64,
    pub replications: usize,
    pub max_rounds: u32,
}

impl SimulationSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SimulationSpec = serde_json::from_str(text).map_err(|e| SimError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(SimError::InvalidSpec(msg));
        if self.dm_count < 2 {
            return bad(format!(
                "dm_count must be at least 2, got {}",
                self.dm_count
            ));
        }
        if self.alternative_count == 0 || self.criterion_count == 0 {
            return bad("alternative_count and criterion_count must be positive".into());
        }
        if self.replications == 0 {
            return bad("replications must be positive".into());
        }
        if self.strategies.len() != 1 && self.strategies.len() != self.dm_count {
            return bad(format!(
                "{} strategies for {} decision makers (give 1 or {})",
                self.strategies.len(),
                self.dm_count,
                self.dm_count
            ));
        }
        for s in &self.strategies {
            s.validate()?;
        }
        self.config()?;
        Ok(())
    }

    pub fn config(&self) -> Result<ConsensusConfig> {
        Ok(ConsensusConfig::new(self.theta)?
            .with_social_mode(self.social_mode)
            .with_max_rounds(self.max_rounds)?)
    }

    pub fn strategy_for(&self, dm_index: usize) -> AgentStrategy {
        if self.strategies.len() == 1 {
            self.strategies[0]
        } else {
            self.strategies[dm_index]
        }
    }
}
