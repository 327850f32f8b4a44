//! Synthetic decision makers driving the revision loop.
//!
//! The strategies here are invented stand-ins for human revision behaviour
//! (stubborn, conformist, noisy conformist); they make no claim about how
//! real groups behave. Everything is seeded: one root seed, one ChaCha stream
//! per replication, so replications can run in any order or in parallel and
//! still produce the same summary.

mod error;
mod instance;
mod run;
mod spec;
mod strategy;
mod summary;

pub use error::SimError;
pub use instance::{generate_instance, replication_rng};
pub use run::{run_replication, run_simulation, ReplicationResult};
pub use spec::{AgentStrategy, SimulationSpec};
pub use strategy::apply_strategy;
pub use summary::{summarize, SimulationSummary};

pub type Result<T, E = SimError> = std::result::Result<T, E>;
