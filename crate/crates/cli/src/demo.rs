//! The reference scenario run end to end and checked against the published
//! tables.

use indexmap::IndexMap;
use sdm_core::worked_example as wx;
use sdm_core::{AggregationResult, AlternativeId, DmId, SocialMode};
use sdm_session::{RoundReport, Session};
use serde::Serialize;

use crate::failure::Outcome;

const F1: [f64; 5] = [0.9, 0.9, 0.9, 0.34, 0.5];
const F2: [f64; 5] = [0.51, 0.31, 0.31, 0.45, 0.25];
const F3: [f64; 5] = [0.75, 0.9, 0.65, 0.44, 0.6];
const F2_REVISED: [f64; 5] = [0.66, 0.9, 0.66, 0.6, 0.8];

const ROUND1_DISTANCES: [[f64; 5]; 2] =
    [[0.15, 0.0, 0.25, 0.1, 0.1], [0.24, 0.59, 0.34, 0.01, 0.35]];
const ROUND1_WEIGHTS: [[f64; 5]; 2] = [
    [0.951, 1.0, 0.861, 1.0, 1.0],
    [0.869, 0.613, 0.787, 1.0, 0.779],
];
const ROUND2_DISTANCES: [f64; 5] = [0.09, 0.0, 0.01, 0.16, 0.2];
const ROUND2_WEIGHTS: [f64; 5] = [1.0, 1.0, 1.0, 0.942, 0.905];
const TOTALS: [f64; 5] = [2.266, 2.7, 2.084, 1.345, 1.823];
const RANKING: [&str; 5] = ["a2", "a1", "a3", "a5", "a4"];

const EXACT: f64 = 1e-9;
const TABLE_WEIGHT_TOL: f64 = 5e-4;
const TOTAL_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub mismatches: Vec<String>,
}

impl Check {
    fn compare(name: &str, expected: &[f64], computed: &[f64], tol: f64) -> Self {
        let mut mismatches = Vec::new();
        if expected.len() != computed.len() {
            mismatches.push(format!(
                "expected {} values, computed {}",
                expected.len(),
                computed.len()
            ));
        }
        for (i, (e, c)) in expected.iter().zip(computed).enumerate() {
            let within = (e - c).abs() <= tol;
            if !within {
                mismatches.push(format!(
                    "[{i}] expected {e}, computed {c} (tolerance {tol})"
                ));
            }
        }
        Self::new(name, mismatches)
    }

    fn new(name: &str, mismatches: Vec<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: mismatches.is_empty(),
            mismatches,
        }
    }
}

pub struct DemoRun {
    pub mode: SocialMode,
    /// Every first-round profile submitted, no round computed yet.
    pub fixture: Session,
    pub session: Session,
    pub round1: RoundReport,
    pub round2: RoundReport,
    pub result: AggregationResult,
    pub checks: Vec<Check>,
    /// Round-one weight cells that differ from the published table.
    pub differing_weights: usize,
}

impl DemoRun {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

/// Weight the given mode must assign to a published distance, computed
/// without the library.
fn oracle_weight(mode: SocialMode, d: f64) -> f64 {
    let max_distance = 1.0 - wx::THETA;
    if d <= max_distance + EXACT {
        return 1.0;
    }
    let excess = d - max_distance;
    match mode {
        SocialMode::WorkedExample => (-excess).exp(),
        SocialMode::Literal => (-wx::THETA * excess).exp(),
    }
}

fn values(report: &RoundReport, dm: &str) -> Vec<f64> {
    report.evaluations[&DmId::from(dm)]
        .values
        .values()
        .copied()
        .collect()
}

fn column(
    report: &RoundReport,
    dm: &str,
    pick: fn(&sdm_core::AlternativeAssessment) -> f64,
) -> Vec<f64> {
    report.assessments[&DmId::from(dm)]
        .alternatives
        .iter()
        .map(pick)
        .collect()
}

fn row_weights(result: &AggregationResult, dm: &str) -> Vec<f64> {
    result.weights[&DmId::from(dm)].values().copied().collect()
}

pub fn run(mode: SocialMode) -> Outcome<DemoRun> {
    let config = wx::config().with_social_mode(mode);
    let mut session = Session::create_with_id(
        "worked-example",
        config,
        wx::criteria(),
        wx::alternatives(),
        wx::participants(),
    )?;
    for profile in wx::initial_profiles() {
        let dm = profile.dm_id.clone();
        session.submit_preferences(&dm, profile)?;
    }
    let fixture = session.clone();
    let round1 = session.compute_round()?;
    session.revise_preferences(&"DM2".into(), wx::revised_profile())?;
    let round2 = session.compute_round()?;
    let result = session.finalize()?;

    let distance = |a: &sdm_core::AlternativeAssessment| a.distance;
    let weight = |a: &sdm_core::AlternativeAssessment| a.weight;
    let flat = |rows: &[[f64; 5]]| rows.concat();

    let mut checks = vec![
        Check::compare("evaluation DM1", &F1, &values(&round1, "DM1"), EXACT),
        Check::compare("evaluation DM2", &F2, &values(&round1, "DM2"), EXACT),
        Check::compare("evaluation DM3", &F3, &values(&round1, "DM3"), EXACT),
        Check::compare(
            "evaluation DM2 revised",
            &F2_REVISED,
            &values(&round2, "DM2"),
            EXACT,
        ),
    ];

    let r1_distances = [
        column(&round1, "DM1", distance),
        column(&round1, "DM2", distance),
    ]
    .concat();
    let r1_weights = [
        column(&round1, "DM1", weight),
        column(&round1, "DM2", weight),
    ]
    .concat();
    checks.push(Check::compare(
        "round 1 distances",
        &flat(&ROUND1_DISTANCES),
        &r1_distances,
        EXACT,
    ));

    let r2_distances = column(&round2, "DM2", distance);
    let r2_weights = column(&round2, "DM2", weight);
    checks.push(Check::compare(
        "round 2 distances",
        &ROUND2_DISTANCES,
        &r2_distances,
        EXACT,
    ));

    let published = flat(&ROUND1_WEIGHTS);
    let differing_weights = published
        .iter()
        .zip(&r1_weights)
        .filter(|(e, c)| (*e - *c).abs() > TABLE_WEIGHT_TOL)
        .count();

    match mode {
        SocialMode::WorkedExample => {
            checks.push(Check::compare(
                "round 1 weights",
                &published,
                &r1_weights,
                TABLE_WEIGHT_TOL,
            ));
            checks.push(Check::compare(
                "round 2 weights",
                &ROUND2_WEIGHTS,
                &r2_weights,
                TABLE_WEIGHT_TOL,
            ));
        }
        SocialMode::Literal => {
            let oracle1: Vec<f64> = flat(&ROUND1_DISTANCES)
                .iter()
                .map(|d| oracle_weight(mode, *d))
                .collect();
            let oracle2: Vec<f64> = ROUND2_DISTANCES
                .iter()
                .map(|d| oracle_weight(mode, *d))
                .collect();
            checks.push(Check::compare(
                "round 1 weights",
                &oracle1,
                &r1_weights,
                EXACT,
            ));
            checks.push(Check::compare(
                "round 2 weights",
                &oracle2,
                &r2_weights,
                EXACT,
            ));
        }
    }

    let expected_totals: Vec<f64> = match mode {
        SocialMode::WorkedExample => TOTALS.to_vec(),
        SocialMode::Literal => (0..5)
            .map(|a| {
                F3[a]
                    + oracle_weight(mode, ROUND1_DISTANCES[0][a]) * F1[a]
                    + oracle_weight(mode, ROUND2_DISTANCES[a]) * F2_REVISED[a]
            })
            .collect(),
    };
    let totals: Vec<f64> = result.totals.values().copied().collect();
    checks.push(Check::compare(
        "totals",
        &expected_totals,
        &totals,
        TOTAL_TOL,
    ));

    let ranking: Vec<&str> = result.ranking.iter().map(AlternativeId::as_str).collect();
    checks.push(Check::new(
        "ranking",
        if ranking == RANKING {
            vec![]
        } else {
            vec![format!("expected {RANKING:?}, computed {ranking:?}")]
        },
    ));

    let mut sourcing = Vec::new();
    if row_weights(&result, "DM3").iter().any(|w| *w != 1.0) {
        sourcing.push("SDM weights are not all 1".to_string());
    }
    if row_weights(&result, "DM2") != r2_weights {
        sourcing.push("DM2 weights do not come from round 2".to_string());
    }
    if row_weights(&result, "DM1") != column(&round1, "DM1", weight) {
        sourcing.push("DM1 weights do not match round 1".to_string());
    }
    checks.push(Check::new("aggregation weight sources", sourcing));

    let mut flow = Vec::new();
    if round1.must_revise != [DmId::from("DM2")] {
        flow.push(format!("round 1 flagged {:?}", round1.must_revise));
    }
    if !round2.must_revise.is_empty() {
        flow.push(format!("round 2 flagged {:?}", round2.must_revise));
    }
    if result.forced {
        flow.push("result was forced".to_string());
    }
    checks.push(Check::new("revision flags", flow));

    Ok(DemoRun {
        mode,
        fixture,
        session,
        round1,
        round2,
        result,
        checks,
        differing_weights,
    })
}

#[derive(Serialize)]
pub struct DemoJson<'a> {
    pub mode: SocialMode,
    pub theta: f64,
    pub max_distance: f64,
    pub sdm_id: &'a DmId,
    pub rounds: [&'a RoundReport; 2],
    pub result: &'a AggregationResult,
    pub totals: &'a IndexMap<AlternativeId, f64>,
    pub differing_weights: usize,
    pub checks: &'a [Check],
    pub passed: bool,
}

impl DemoRun {
    pub fn to_json(&self) -> DemoJson<'_> {
        DemoJson {
            mode: self.mode,
            theta: self.session.config().theta(),
            max_distance: self.session.config().max_distance(),
            sdm_id: self.session.sdm_id(),
            rounds: [&self.round1, &self.round2],
            result: &self.result,
            totals: &self.result.totals,
            differing_weights: self.differing_weights,
            checks: &self.checks,
            passed: self.failed() == 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_pass_their_checks() {
        for mode in [SocialMode::WorkedExample, SocialMode::Literal] {
            let run = run(mode).unwrap();
            let failed: Vec<_> = run.checks.iter().filter(|c| !c.passed).collect();
            assert!(failed.is_empty(), "{mode:?}: {failed:?}");
        }
    }

    #[test]
    fn literal_mode_departs_from_published_weights() {
        assert_eq!(run(SocialMode::WorkedExample).unwrap().differing_weights, 0);
        assert!(run(SocialMode::Literal).unwrap().differing_weights > 0);
    }

    #[test]
    fn literal_oracle_value() {
        assert!((oracle_weight(SocialMode::Literal, 0.15) - 0.9559974818331).abs() < 1e-12);
        assert_eq!(oracle_weight(SocialMode::Literal, 0.1), 1.0);
    }
}
