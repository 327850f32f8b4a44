use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdm_core::{Alternative, Criterion, DecisionMaker, PreferenceProfile, ScoreScale};
use sdm_session::Session;

use crate::{Result, SimulationSpec};

/// Independent random stream for one replication: the root seed keyed by the
/// replication index as ChaCha stream id.
pub fn replication_rng(seed: u64, replication_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication_index as u64);
    rng
}

/// Draws the starting session for one replication: uniform reputations,
/// uniform `[0, 1]` criterion weights, and scores picked uniformly from the
/// default score scale. All profiles are submitted; no round has run.
///
/// The draws do not depend on `theta`, so sweeping `theta` with a fixed seed
/// compares identical groups.
pub fn generate_instance(spec: &SimulationSpec, replication_index: usize) -> Result<Session> {
    let mut rng = replication_rng(spec.seed, replication_index);
    generate_with_rng(spec, replication_index, &mut rng)
}

pub(crate) fn generate_with_rng<R: Rng>(
    spec: &SimulationSpec,
    replication_index: usize,
    rng: &mut R,
) -> Result<Session> {
    spec.validate()?;
    let criteria: Vec<Criterion> = (1..=spec.criterion_count)
        .map(|i| Criterion::new(format!("c{i}"), format!("criterion {i}")))
        .collect();
    let alternatives: Vec<Alternative> = (1..=spec.alternative_count)
        .map(|i| Alternative::new(format!("a{i}"), format!("alternative {i}")))
        .collect();
    let participants: Vec<DecisionMaker> = (1..=spec.dm_count)
        .map(|i| DecisionMaker::new(format!("d{i}"), format!("agent {i}"), rng.random::<f64>()))
        .collect();

    let scale: Vec<f64> = ScoreScale::default().values().collect();
    let mut profiles = Vec::with_capacity(spec.dm_count);
    for dm in &participants {
        let weights: Vec<f64> = (0..spec.criterion_count)
            .map(|_| rng.random::<f64>())
            .collect();
        let rows: Vec<Vec<f64>> = (0..spec.criterion_count)
            .map(|_| {
                (0..spec.alternative_count)
                    .map(|_| scale[rng.random_range(0..scale.len())])
                    .collect()
            })
            .collect();
        profiles.push(PreferenceProfile::from_rows(
            dm.id.clone(),
            &criteria,
            &alternatives,
            &weights,
            &rows,
        )?);
    }

    let mut session = Session::create_with_id(
        format!("sim-{}-{replication_index}", spec.seed),
        spec.config()?,
        criteria,
        alternatives,
        participants,
    )?;
    for profile in profiles {
        let dm = profile.dm_id.clone();
        session.submit_preferences(&dm, profile)?;
    }
    Ok(session)
}
