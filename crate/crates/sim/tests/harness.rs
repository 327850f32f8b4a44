use std::collections::BTreeMap;

use proptest::prelude::*;
use sdm_core::SocialMode;
use sdm_sim::{generate_instance, run_simulation, AgentStrategy, SimulationSpec};

fn spec(strategy: AgentStrategy, seed: u64, replications: usize) -> SimulationSpec {
    SimulationSpec {
        dm_count: 5,
        alternative_count: 5,
        criterion_count: 3,
        theta: 0.9,
        social_mode: SocialMode::WorkedExample,
        strategies: vec![strategy],
        seed,
        replications,
        max_rounds: 20,
    }
}

#[test]
fn same_seed_same_summary_regardless_of_threads() {
    let spec = spec(
        AgentStrategy::Noisy {
            sigma: 0.05,
            step: 0.5,
        },
        7,
        24,
    );
    let parallel = run_simulation(&spec).unwrap().to_json();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_simulation(&spec).unwrap().to_json());
    assert_eq!(parallel, single);
    assert_eq!(parallel, run_simulation(&spec).unwrap().to_json());
}

#[test]
fn instances_are_reproducible_and_valid() {
    let spec = spec(AgentStrategy::Stubborn, 11, 3);
    let a = generate_instance(&spec, 2).unwrap();
    let b = generate_instance(&spec, 2).unwrap();
    assert_eq!(a.profiles(), b.profiles());
    assert_eq!(a.participants(), b.participants());
    assert_ne!(
        generate_instance(&spec, 1).unwrap().profiles(),
        a.profiles()
    );
    for profile in a.profiles().values() {
        assert!(profile.validate(a.criteria(), a.alternatives()).is_ok());
    }
}

#[test]
fn worked_example_dimensions() {
    let mut s = spec(AgentStrategy::Stubborn, 3, 1);
    s.dm_count = 3;
    let session = generate_instance(&s, 0).unwrap();
    assert_eq!(session.participants().len(), 3);
    assert_eq!(session.alternatives().len(), 5);
    assert_eq!(session.criteria().len(), 3);
    let top = session
        .participants()
        .iter()
        .max_by(|x, y| x.reputation.total_cmp(&y.reputation))
        .unwrap();
    assert_eq!(session.sdm_id(), &top.id);
}

#[test]
fn single_agent_spec_rejected() {
    let mut s = spec(AgentStrategy::Stubborn, 3, 1);
    s.dm_count = 1;
    assert!(generate_instance(&s, 0).is_err());
    assert!(run_simulation(&s).is_err());
}

#[test]
fn full_conformists_converge_within_two_rounds() {
    let summary = run_simulation(&spec(AgentStrategy::Conformist { step: 1.0 }, 5, 100)).unwrap();
    assert_eq!(summary.convergence_rate, 1.0);
    assert!(summary.replications.iter().all(|r| r.rounds_used <= 2));
}

#[test]
fn stubborn_unanimity_only_converges_when_already_identical() {
    let mut s = spec(AgentStrategy::Stubborn, 13, 20);
    s.theta = 1.0;
    s.max_rounds = 3;
    let summary = run_simulation(&s).unwrap();
    for r in &summary.replications {
        let session = generate_instance(&s, r.index).unwrap();
        let sdm = &session.profiles()[session.sdm_id()];
        let all_equal = session.profiles().values().all(|p| {
            p.criterion_weights == sdm.criterion_weights && p.score_matrix == sdm.score_matrix
        });
        assert_eq!(r.converged, all_equal);
        if !r.converged {
            assert_eq!(r.rounds_used, 3);
        }
    }
}

#[test]
fn seeded_half_step_conformists_regression() {
    // Observed once with this exact spec and frozen.
    let summary = run_simulation(&spec(AgentStrategy::Conformist { step: 0.5 }, 42, 100)).unwrap();
    assert_eq!(summary.convergence_rate, 1.0);
    assert_eq!(
        summary.rounds_histogram,
        BTreeMap::from([(3, 6), (4, 57), (5, 37)])
    );
    assert_eq!(summary.median_rounds, 4.0);
    assert!((summary.mean_rounds - 4.31).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raising_theta_never_adds_round_one_consensus(
        seed in any::<u64>(),
        index in 0usize..50,
        low in 0.0..=1.0f64,
        high in 0.0..=1.0f64,
    ) {
        let (low, high) = if low <= high { (low, high) } else { (high, low) };
        let count = |theta: f64| {
            let mut s = spec(AgentStrategy::Stubborn, seed, 1);
            s.theta = theta;
            let mut session = generate_instance(&s, index).unwrap();
            let report = session.compute_round().unwrap();
            report.assessments.values().map(|a| a.consensus_count).collect::<Vec<_>>()
        };
        for (strict, loose) in count(high).iter().zip(count(low)) {
            prop_assert!(*strict <= loose);
        }
    }
}
