//! Numerical core of a leader-anchored group consensus model.
//!
//! Every decision maker scores each alternative against a set of weighted
//! criteria. Their weighted-sum evaluations are compared, alternative by
//! alternative, with those of the Supra Decision Maker (SDM). Alternatives
//! whose distance to the SDM exceeds the tolerated maximum `1 - theta` have
//! their influence decayed exponentially before all evaluations are summed
//! into a group ranking.
//!
//! All functions here are pure and deterministic.

pub mod aggregation;
pub mod assessment;
pub mod config;
pub mod distance;
mod error;
pub mod evaluation;
pub mod model;
pub mod scale;
pub mod social;
pub mod worked_example;

pub use aggregation::{aggregate, rank, AggregationResult};
pub use assessment::{assess, majority_reached, AlternativeAssessment, ConsensusAssessment};
pub use config::{max_distance_from_theta, ConsensusConfig, MajorityRule, SocialMode};
pub use distance::{per_alternative_distance, rms_distance};
pub use error::CoreError;
pub use evaluation::{evaluate, EvaluationVector};
pub use model::{
    Alternative, AlternativeId, Criterion, CriterionId, DecisionMaker, DmId, PreferenceProfile,
    ProfileDiagnostic, Role,
};
pub use scale::{ScoreLevel, ScoreScale};
pub use social::social_weight;

pub type Result<T, E = CoreError> = std::result::Result<T, E>;

/// Default tolerance for consensus-boundary comparisons.
pub const DEFAULT_EPSILON: f64 = 1e-9;
