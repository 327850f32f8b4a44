//! `sdm`: run the reference scenario, drive session files and simulations.
//!
//! Exit codes: 0 success, 1 a golden check failed, 2 i/o error,
//! 3 invalid input (including usage errors and rejected protocol steps).

mod demo;
mod failure;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use sdm_core::{DmId, PreferenceProfile, SocialMode};
use sdm_session::{load_session, save_session, write_atomic, Session};
use sdm_sim::{run_simulation, SimulationSpec};
use serde::Serialize;

use crate::failure::{Failure, Outcome};

/// Writes data to stdout. A closed pipe ends the process quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
    {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("sdm: i/o error: stdout: {e}");
            std::process::exit(2);
        }
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(&format!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format_args!($($arg)*))) };
}

/// Fallback directory for simulation output when `--out` is absent.
const OUTPUT_DIR_ENV: &str = "SDM_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "sdm",
    version,
    about = "Group consensus around a supervisory decision maker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Mode {
    /// w = exp(-excess), as in the reference tables
    #[default]
    Worked,
    /// w = exp(-theta * excess)
    Literal,
}

impl From<Mode> for SocialMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Worked => SocialMode::WorkedExample,
            Mode::Literal => SocialMode::Literal,
        }
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the reference scenario and check every number against the tables
    Demo {
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also write the scenario, first-round profiles submitted, as a session file
        #[arg(long, value_name = "PATH")]
        save_fixture: Option<PathBuf>,
    },
    /// Print every submitted profile's evaluation vector
    Evaluate {
        #[arg(long)]
        session: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Submit or revise one participant's preference profile
    Submit {
        #[arg(long)]
        session: PathBuf,
        #[arg(long)]
        dm: String,
        /// JSON file holding criterion_weights and score_matrix
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Assess the current profiles and record a round
    Round {
        #[arg(long)]
        session: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Aggregate and rank, closing the session
    Finalize {
        #[arg(long)]
        session: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a seeded simulation and write its summary
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        replications: Option<usize>,
        /// Summary JSON path; defaults to $SDM_OUTPUT_DIR or the current directory
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write per-replication CSV next to the JSON summary
        #[arg(long)]
        csv: bool,
    },
    /// Print a session's state, rounds and result
    Report {
        #[arg(long)]
        session: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("sdm: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Demo {
            mode,
            format,
            save_fixture,
        } => cmd_demo(mode.into(), format, save_fixture.as_deref()),
        Command::Evaluate { session, format } => cmd_evaluate(&session, format),
        Command::Submit {
            session,
            dm,
            profile,
            format,
        } => cmd_submit(&session, DmId::new(dm), &profile, format),
        Command::Round { session, format } => cmd_round(&session, format),
        Command::Finalize { session, format } => cmd_finalize(&session, format),
        Command::Simulate {
            spec,
            seed,
            replications,
            out,
            csv,
        } => cmd_simulate(&spec, seed, replications, out, csv),
        Command::Report { session, format } => cmd_report(&session, format),
    }
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(Failure::invalid)?;
    outln!("{text}");
    Ok(())
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load(path: &Path) -> Outcome<Session> {
    let text = read(path)?;
    load_session(&text)
        .map_err(|e| Failure::Invalid(anyhow!(e).context(path.display().to_string())))
}

fn store(path: &Path, session: &Session) -> Outcome {
    write_atomic(path, save_session(session).as_bytes()).map_err(|e| Failure::io(path, e))
}

fn cmd_demo(mode: SocialMode, format: Format, save_fixture: Option<&Path>) -> Outcome {
    let run = demo::run(mode)?;
    if let Some(path) = save_fixture {
        store(path, &run.fixture)?;
        eprintln!("wrote fixture session to {}", path.display());
    }
    match format {
        Format::Json => print_json(&run.to_json())?,
        Format::Table => {
            let config = run.session.config();
            let (name, rule) = match mode {
                SocialMode::WorkedExample => ("worked", "w = exp(-excess)"),
                SocialMode::Literal => ("literal", "w = exp(-theta * excess)"),
            };
            outln!("mode: {name} ({rule})");
            outln!(
                "theta {}, max distance {}, SDM {}\n",
                render::fmt3(config.theta()),
                render::fmt3(config.max_distance()),
                run.session.sdm_id()
            );
            let n = run.session.alternatives().len();
            outln!("{}", render::report(&run.round1, n));
            outln!("DM2 revises\n");
            outln!("{}", render::report(&run.round2, n));
            outln!("final aggregation\n{}", render::result(&run.result));
            if mode == SocialMode::Literal {
                outln!(
                    "note: literal mode; {} of 10 round 1 weights differ from the reference table, checked against exp(-theta * excess) instead",
                    run.differing_weights
                );
            }
            let total = run.checks.len();
            match run.failed() {
                0 => outln!("checks: all {total} passed"),
                n => outln!("checks: {n} of {total} failed"),
            }
        }
    }
    for check in run.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}", check.name);
        for m in &check.mismatches {
            eprintln!("  {m}");
        }
    }
    match run.failed() {
        0 => Ok(()),
        n => Err(Failure::Check(n)),
    }
}

fn cmd_evaluate(path: &Path, format: Format) -> Outcome {
    let session = load(path)?;
    let mut evaluations = indexmap::IndexMap::new();
    for p in session.participants() {
        if let Some(profile) = session.profile(&p.id) {
            let f = sdm_core::evaluate(profile, session.criteria(), session.alternatives())?;
            evaluations.insert(p.id.clone(), f);
        }
    }
    let missing = session.missing_submissions();
    if !missing.is_empty() {
        let names: Vec<&str> = missing.iter().map(DmId::as_str).collect();
        eprintln!("no preferences yet from: {}", names.join(", "));
    }
    match format {
        Format::Json => print_json(&evaluations),
        Format::Table => {
            out!("{}", render::evaluations(&evaluations));
            Ok(())
        }
    }
}

fn cmd_submit(path: &Path, dm: DmId, profile_path: &Path, format: Format) -> Outcome {
    let mut session = load(path)?;
    let text = read(profile_path)?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(anyhow!(e).context(profile_path.display().to_string())))?;
    if let Some(obj) = value.as_object_mut() {
        match obj.get("dm_id") {
            Some(claimed) if claimed.as_str() != Some(dm.as_str()) => {
                return Err(Failure::invalid(anyhow!(
                    "profile names {claimed} but --dm is {dm}"
                )))
            }
            Some(_) => {}
            None => {
                obj.insert("dm_id".into(), serde_json::Value::String(dm.to_string()));
            }
        }
    }
    let profile: PreferenceProfile = serde_json::from_value(value)
        .map_err(|e| Failure::Invalid(anyhow!(e).context(profile_path.display().to_string())))?;
    let outcome = session.submit_preferences(&dm, profile)?;
    store(path, &session)?;
    for d in &outcome.diagnostics {
        eprintln!("warning: {dm}: {d}");
    }
    match format {
        Format::Json => print_json(&outcome),
        Format::Table => {
            outln!("{:?} recorded for {dm}", outcome.action);
            let single = indexmap::IndexMap::from([(dm, outcome.evaluation)]);
            out!("{}", render::evaluations(&single));
            Ok(())
        }
    }
}

fn cmd_round(path: &Path, format: Format) -> Outcome {
    let mut session = load(path)?;
    let report = session.compute_round()?;
    store(path, &session)?;
    match format {
        Format::Json => print_json(&report),
        Format::Table => {
            out!("{}", render::report(&report, session.alternatives().len()));
            Ok(())
        }
    }
}

fn cmd_finalize(path: &Path, format: Format) -> Outcome {
    let mut session = load(path)?;
    let result = session.finalize()?;
    store(path, &session)?;
    if result.forced {
        eprintln!("warning: consensus not reached within the round limit");
    }
    match format {
        Format::Json => print_json(&result),
        Format::Table => {
            out!("{}", render::result(&result));
            Ok(())
        }
    }
}

fn cmd_report(path: &Path, format: Format) -> Outcome {
    let session = load(path)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                session_id: &'a str,
                status: sdm_session::SessionStatus,
                round: u32,
                sdm_id: &'a DmId,
                missing: Vec<DmId>,
                rounds: &'a [sdm_session::RoundReport],
                result: Option<sdm_core::AggregationResult>,
            }
            print_json(&Report {
                session_id: session.id(),
                status: session.status(),
                round: session.round(),
                sdm_id: session.sdm_id(),
                missing: session.missing_submissions(),
                rounds: session.history(),
                result: session.result(),
            })
        }
        Format::Table => {
            out!("{}", render::session(&session));
            Ok(())
        }
    }
}

fn cmd_simulate(
    spec_path: &Path,
    seed: Option<u64>,
    replications: Option<usize>,
    out: Option<PathBuf>,
    csv: bool,
) -> Outcome {
    let text = read(spec_path)?;
    let mut spec = SimulationSpec::from_json(&text)
        .map_err(|e| Failure::Invalid(anyhow!(e).context(spec_path.display().to_string())))?;
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    if let Some(n) = replications {
        spec.replications = n;
    }
    let summary = run_simulation(&spec).map_err(Failure::invalid)?;

    let json_path = out.unwrap_or_else(|| {
        let dir = std::env::var_os(OUTPUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("."));
        dir.join(format!("simulation-{}.json", spec.seed))
    });
    if let Some(dir) = json_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    }
    write_atomic(&json_path, summary.to_json().as_bytes())
        .map_err(|e| Failure::io(&json_path, e))?;
    eprintln!("wrote {}", json_path.display());
    if csv {
        let csv_path = json_path.with_extension("csv");
        let text = summary.to_csv().map_err(Failure::invalid)?;
        write_atomic(&csv_path, text.as_bytes()).map_err(|e| Failure::io(&csv_path, e))?;
        eprintln!("wrote {}", csv_path.display());
    }
    out!("{}", render::summary(&summary));
    Ok(())
}
