//! World state and the semi-synchronous round engine.
//!
//! Each round an activation set of robots takes a snapshot of the same
//! pre-round world, computes a decision, and all movers traverse their full
//! paths simultaneously (rigid motion, shared path fraction). Runs are
//! deterministic functions of the initial world, the activation policy and
//! one master seed.

mod engine;
mod policy;
mod trace;
mod world;

pub use engine::{detect_termination, random_initial, run, step, RunParams};
pub use policy::{ActivationPolicy, PolicyKind};
pub use trace::{DecisionRecord, Outcome, RoundRecord, Trace, TraceHeader};
pub use world::{RobotState, WorldState};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid world: {0}")]
    InvalidWorld(String),
    #[error("activation set is empty")]
    EmptyActivation,
    #[error("activation id {0} out of range")]
    UnknownRobot(usize),
    #[error("could not place {n} robots in a box of side {side} after {attempts} attempts")]
    PlacementFailed { n: usize, side: f64, attempts: usize },
    #[error("compute failed for robot {robot}: {source}")]
    Compute {
        robot: usize,
        source: crate::logic::ComputeError,
    },
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// Derives the per-(round, robot) tie seed from the master seed.
pub(crate) fn tie_seed(master: u64, round: u64, robot: u64) -> u64 {
    splitmix64(
        master
            ^ splitmix64(round.wrapping_mul(0x9E37_79B9_7F4A_7C15))
            ^ splitmix64(robot.wrapping_add(0xD1B5_4A32_D192_ED03)),
    )
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}
