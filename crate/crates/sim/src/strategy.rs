use rand::Rng;
use sdm_core::PreferenceProfile;

use crate::{AgentStrategy, Result, SimError};

/// Produces the profile a synthetic decision maker resubmits when asked to
/// revise. The result keeps `own`'s owner id.
pub fn apply_strategy<R: Rng + ?Sized>(
    strategy: &AgentStrategy,
    own: &PreferenceProfile,
    sdm: &PreferenceProfile,
    rng: &mut R,
) -> Result<PreferenceProfile> {
    check_shape(own, sdm)?;
    match *strategy {
        AgentStrategy::Stubborn => Ok(own.clone()),
        AgentStrategy::Conformist { step } => Ok(blend(own, sdm, step, |x| x)),
        AgentStrategy::Noisy { sigma, step } => Ok(blend(own, sdm, step, |x| {
            let noise = if sigma > 0.0 {
                rng.random_range(-sigma..=sigma)
            } else {
                0.0
            };
            x + noise
        })),
    }
}

/// `(1 - step) * own + step * sdm` per cell, passed through `perturb` and
/// clamped to `[0, 1]`. With `step == 1` the SDM's values come out exactly.
fn blend(
    own: &PreferenceProfile,
    sdm: &PreferenceProfile,
    step: f64,
    mut perturb: impl FnMut(f64) -> f64,
) -> PreferenceProfile {
    let mut mix = |x: f64, y: f64| perturb((1.0 - step) * x + step * y).clamp(0.0, 1.0);
    let mut out = own.clone();
    for (c, w) in out.criterion_weights.iter_mut() {
        *w = mix(*w, sdm.criterion_weights[c]);
    }
    for (c, row) in out.score_matrix.iter_mut() {
        for (a, g) in row.iter_mut() {
            *g = mix(*g, sdm.score_matrix[c][a]);
        }
    }
    out
}

fn check_shape(own: &PreferenceProfile, sdm: &PreferenceProfile) -> Result<()> {
    let same_criteria = own
        .criterion_weights
        .keys()
        .eq(sdm.criterion_weights.keys())
        && own.score_matrix.keys().eq(sdm.score_matrix.keys());
    let same_cells = same_criteria
        && own
            .score_matrix
            .iter()
            .all(|(c, row)| row.keys().eq(sdm.score_matrix[c].keys()));
    if same_cells {
        Ok(())
    } else {
        Err(SimError::Domain(format!(
            "profiles of {} and {} cover different criteria or alternatives",
            own.dm_id, sdm.dm_id
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replication_rng;
    use sdm_core::worked_example as wx;

    fn pair() -> (PreferenceProfile, PreferenceProfile) {
        let mut p = wx::initial_profiles();
        let sdm = p.remove(2);
        (p.remove(1), sdm)
    }

    #[test]
    fn full_conformist_copies_sdm() {
        let (own, sdm) = pair();
        let mut rng = replication_rng(0, 0);
        let out = apply_strategy(
            &AgentStrategy::Conformist { step: 1.0 },
            &own,
            &sdm,
            &mut rng,
        )
        .unwrap();
        assert_eq!(out.criterion_weights, sdm.criterion_weights);
        assert_eq!(out.score_matrix, sdm.score_matrix);
        assert_eq!(out.dm_id, own.dm_id);
    }

    #[test]
    fn stubborn_is_identity() {
        let (own, sdm) = pair();
        let mut rng = replication_rng(0, 0);
        assert_eq!(
            apply_strategy(&AgentStrategy::Stubborn, &own, &sdm, &mut rng).unwrap(),
            own
        );
    }

    #[test]
    fn half_step_is_midpoint() {
        let (mut own, mut sdm) = pair();
        own.criterion_weights.insert("c1".into(), 0.4);
        sdm.criterion_weights.insert("c1".into(), 0.8);
        let mut rng = replication_rng(0, 0);
        let out = apply_strategy(
            &AgentStrategy::Conformist { step: 0.5 },
            &own,
            &sdm,
            &mut rng,
        )
        .unwrap();
        assert!((out.criterion_weights["c1"] - 0.6).abs() < 1e-12);
    }

    #[test]
    fn noisy_stays_in_unit_interval_and_is_seeded() {
        let (own, sdm) = pair();
        let strategy = AgentStrategy::Noisy {
            sigma: 0.8,
            step: 0.5,
        };
        let a = apply_strategy(&strategy, &own, &sdm, &mut replication_rng(9, 3)).unwrap();
        let b = apply_strategy(&strategy, &own, &sdm, &mut replication_rng(9, 3)).unwrap();
        assert_eq!(a, b);
        let cells = a
            .criterion_weights
            .values()
            .chain(a.score_matrix.values().flat_map(|r| r.values()));
        for v in cells {
            assert!((0.0..=1.0).contains(v));
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let (own, mut sdm) = pair();
        sdm.score_matrix.get_mut("c1").unwrap().remove("a5");
        let mut rng = replication_rng(0, 0);
        assert!(apply_strategy(&AgentStrategy::Stubborn, &own, &sdm, &mut rng).is_err());
    }
}
