//! Social-judgment weighting: influence decays exponentially with the amount
//! by which a distance exceeds the tolerated maximum.

use crate::config::{ConsensusConfig, SocialMode};
use crate::{CoreError, Result};

/// Weight `w'` in `(0, 1]` for a per-alternative distance `d`.
///
/// Exactly `1` while `d <= max_distance + epsilon`.
pub fn social_weight(d: f64, config: &ConsensusConfig) -> Result<f64> {
    if d.is_nan() || d < 0.0 {
        return Err(CoreError::Domain(format!(
            "distance {d} must be non-negative"
        )));
    }
    if within_tolerance(d, config) {
        return Ok(1.0);
    }
    let excess = d - config.max_distance();
    let exponent = match config.social_mode() {
        SocialMode::WorkedExample => excess,
        SocialMode::Literal => config.theta() * excess,
    };
    Ok((-exponent).exp())
}

pub(crate) fn within_tolerance(d: f64, config: &ConsensusConfig) -> bool {
    d <= config.max_distance() + config.epsilon()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(mode: SocialMode) -> ConsensusConfig {
        ConsensusConfig::new(0.9).unwrap().with_social_mode(mode)
    }

    #[test]
    fn table_weights() {
        let worked = config(SocialMode::WorkedExample);
        let w = social_weight(0.15, &worked).unwrap();
        assert!((w - 0.951).abs() < 5e-4);
        assert!((w - (-0.05f64).exp()).abs() < 1e-12);
        let w = social_weight(0.59, &worked).unwrap();
        assert!((w - 0.613).abs() < 5e-4);
    }

    #[test]
    fn boundary_is_consensus_in_both_modes() {
        for mode in [SocialMode::WorkedExample, SocialMode::Literal] {
            assert_eq!(social_weight(0.10, &config(mode)).unwrap(), 1.0);
            // 0.34 - 0.44 in floating point lands a hair above 0.1.
            assert_eq!(
                social_weight((0.34f64 - 0.44).abs(), &config(mode)).unwrap(),
                1.0
            );
        }
    }

    #[test]
    fn literal_mode_scales_by_theta() {
        let w = social_weight(0.15, &config(SocialMode::Literal)).unwrap();
        assert!((w - 0.955_997_481_833_100_3).abs() < 1e-9);
    }

    #[test]
    fn negative_or_nan_distance_rejected() {
        let c = config(SocialMode::WorkedExample);
        assert!(matches!(
            social_weight(-0.01, &c),
            Err(CoreError::Domain(_))
        ));
        assert!(social_weight(f64::NAN, &c).is_err());
    }
}
