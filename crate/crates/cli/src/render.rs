//! Human-readable tables. Numbers are shown to three decimals; every
//! comparison elsewhere uses full precision.

use std::fmt::Write;

use indexmap::IndexMap;
use sdm_core::{AggregationResult, AlternativeId, DmId, EvaluationVector};
use sdm_session::{RoundReport, Session};
use sdm_sim::SimulationSummary;

pub fn fmt3(x: f64) -> String {
    format!("{x:.3}")
}

pub fn ranking_line(ranking: &[AlternativeId]) -> String {
    ranking
        .iter()
        .map(AlternativeId::as_str)
        .collect::<Vec<_>>()
        .join(" > ")
}

fn id_width<'a>(ids: impl Iterator<Item = &'a str>, header: &str) -> usize {
    ids.map(str::len).chain([header.len()]).max().unwrap_or(0)
}

pub fn evaluations(evaluations: &IndexMap<DmId, EvaluationVector>) -> String {
    let mut out = String::new();
    let Some(first) = evaluations.values().next() else {
        return "no evaluations\n".into();
    };
    let w = id_width(evaluations.keys().map(DmId::as_str), "DM");
    let _ = write!(out, "{:<w$}", "DM");
    for a in first.alternatives() {
        let _ = write!(out, " {:>7}", a.as_str());
    }
    out.push('\n');
    for (dm, f) in evaluations {
        let _ = write!(out, "{:<w$}", dm.as_str());
        for v in f.values.values() {
            let _ = write!(out, " {:>7}", fmt3(*v));
        }
        out.push('\n');
    }
    out
}

pub fn report(report: &RoundReport, alternative_count: usize) -> String {
    let mut out = format!("round {}\n", report.round);
    out.push_str(&evaluations(&report.evaluations));
    out.push('\n');
    let w = id_width(report.assessments.keys().map(DmId::as_str), "DM");
    let _ = writeln!(
        out,
        "{:<w$} {:<11} {:>8} {:>7}  consensus",
        "DM", "alternative", "distance", "weight"
    );
    for a in report.assessments.values() {
        for alt in &a.alternatives {
            let _ = writeln!(
                out,
                "{:<w$} {:<11} {:>8} {:>7}  {}",
                a.dm_id.as_str(),
                alt.alternative.as_str(),
                fmt3(alt.distance),
                fmt3(alt.weight),
                if alt.in_consensus { "yes" } else { "no" }
            );
        }
    }
    out.push('\n');
    for a in report.assessments.values() {
        let _ = writeln!(
            out,
            "{}: {}/{} in consensus, {}",
            a.dm_id,
            a.consensus_count,
            alternative_count,
            if a.majority_reached {
                "majority reached"
            } else {
                "below majority"
            }
        );
    }
    let revise = if report.must_revise.is_empty() {
        "none".to_string()
    } else {
        report
            .must_revise
            .iter()
            .map(DmId::as_str)
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(out, "must revise: {revise}");
    out
}

pub fn result(result: &AggregationResult) -> String {
    let mut out = String::new();
    let position: IndexMap<&AlternativeId, usize> = result
        .ranking
        .iter()
        .enumerate()
        .map(|(i, a)| (a, i + 1))
        .collect();
    let w = id_width(
        result.totals.keys().map(AlternativeId::as_str),
        "alternative",
    );
    let _ = writeln!(out, "{:<w$} {:>7} {:>5}", "alternative", "total", "rank");
    for (a, total) in &result.totals {
        let _ = writeln!(
            out,
            "{:<w$} {:>7} {:>5}",
            a.as_str(),
            fmt3(*total),
            position[a]
        );
    }
    if result.forced {
        out.push_str("note: round limit reached without consensus; result was forced\n");
    }
    let _ = writeln!(out, "ranking: {}", ranking_line(&result.ranking));
    out
}

pub fn session(session: &Session) -> String {
    let config = session.config();
    let mut out = format!(
        "session {}\nstatus {:?}, round {} of at most {}\ntheta {}, max distance {}, SDM {}\n",
        session.id(),
        session.status(),
        session.round(),
        config.max_rounds(),
        fmt3(config.theta()),
        fmt3(config.max_distance()),
        session.sdm_id()
    );
    let missing = session.missing_submissions();
    if !missing.is_empty() {
        let names: Vec<&str> = missing.iter().map(DmId::as_str).collect();
        let _ = writeln!(out, "awaiting preferences from: {}", names.join(", "));
    }
    for r in session.history() {
        out.push('\n');
        out.push_str(&report(r, session.alternatives().len()));
    }
    if let Some(res) = session.result() {
        out.push_str("\nfinal aggregation\n");
        out.push_str(&result(&res));
    }
    out
}

pub fn summary(summary: &SimulationSummary) -> String {
    let mut out = format!(
        "replications {}\nconverged {} (rate {:?})\nmean rounds {}, median rounds {}\nrounds histogram:\n",
        summary.replications.len(),
        summary.converged_count,
        summary.convergence_rate,
        fmt3(summary.mean_rounds),
        fmt3(summary.median_rounds)
    );
    for (rounds, count) in &summary.rounds_histogram {
        let _ = writeln!(out, "  {rounds:>3}: {count}");
    }
    out
}
