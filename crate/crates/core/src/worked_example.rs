//! The three-person, five-project community decision used as the reference
//! scenario throughout the tests, the demo command and the service fixtures.
//!
//! Reputations are not part of the original scenario; they are chosen so that
//! `DM3` is elected as the SDM.

use crate::config::ConsensusConfig;
use crate::model::{Alternative, Criterion, DecisionMaker, PreferenceProfile};

pub const THETA: f64 = 0.90;
pub const SDM: &str = "DM3";

pub fn config() -> ConsensusConfig {
    ConsensusConfig::new(THETA).expect("theta in range")
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion::new("c1", "urgency").with_description("the project's urgency"),
        Criterion::new("c2", "impact").with_description("the project's impact on the community"),
        Criterion::new("c3", "work plan")
            .with_description("quality of the project's detailed work plan"),
    ]
}

pub fn alternatives() -> Vec<Alternative> {
    (1..=5)
        .map(|i| Alternative::new(format!("a{i}"), format!("Project {i}")))
        .collect()
}

pub fn participants() -> Vec<DecisionMaker> {
    vec![
        DecisionMaker::new("DM1", "Decision maker 1", 0.6),
        DecisionMaker::new("DM2", "Decision maker 2", 0.5),
        DecisionMaker::new("DM3", "Decision maker 3", 0.9),
    ]
}

fn profile(dm: &str, weights: [f64; 3], rows: [[f64; 5]; 3]) -> PreferenceProfile {
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    PreferenceProfile::from_rows(dm, &criteria(), &alternatives(), &weights, &rows)
        .expect("fixture shape")
}

/// First-round profiles of DM1, DM2 and DM3, in that order.
pub fn initial_profiles() -> Vec<PreferenceProfile> {
    vec![
        profile(
            "DM1",
            [0.7, 0.1, 0.1],
            [
                [1.0, 1.0, 1.0, 0.3, 0.5],
                [1.0, 1.0, 1.0, 0.3, 0.5],
                [1.0, 1.0, 1.0, 1.0, 1.0],
            ],
        ),
        profile(
            "DM2",
            [0.4, 0.1, 0.2],
            [
                [1.0, 0.5, 0.5, 0.5, 0.3],
                [0.5, 0.5, 0.5, 0.5, 0.3],
                [0.3, 0.3, 0.3, 1.0, 0.5],
            ],
        ),
        profile(
            "DM3",
            [0.3, 0.5, 0.2],
            [
                [0.5, 1.0, 1.0, 0.3, 0.5],
                [1.0, 1.0, 0.5, 0.3, 0.5],
                [0.5, 0.5, 0.5, 1.0, 1.0],
            ],
        ),
    ]
}

/// DM2's profile after being asked to revise.
pub fn revised_profile() -> PreferenceProfile {
    profile(
        "DM2",
        [0.4, 0.4, 0.2],
        [
            [1.0, 1.0, 1.0, 0.5, 0.5],
            [0.5, 1.0, 0.5, 0.5, 1.0],
            [0.3, 0.5, 0.3, 1.0, 1.0],
        ],
    )
}
