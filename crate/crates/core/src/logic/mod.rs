//! The per-robot compute phase.
//!
//! Robots are oblivious: every decision is a pure function of the snapshot
//! taken in the robot's own frame (shared Y direction, private X
//! orientation) plus a scheduler-supplied tie-break seed. Residual mirror
//! ties that no anonymous rule can break deterministically are surfaced as
//! tie events and resolved by the scheduler.

mod decision;
mod expansion;
mod formation;
mod frame;
mod symmetry;
mod targets;

pub use decision::{
    Action, Decision, DecisionNote, ExpansionBranch, ExpansionMeta, Phase, TieBreaker, TieEvent,
};
pub use expansion::sec_expansion_decision;
pub use formation::form_ucircle_decision;
pub use frame::{LocalFrame, Snapshot};
pub use symmetry::{detect_symmetry_and_leaders, LeaderRule, SymmetryReport};
pub use targets::{compute_target_points, TargetLayout};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{smallest_enclosing_circle, GeometryError};
use crate::Scalar;

#[derive(Debug, Error)]
pub enum ComputeError {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("phase precondition violated: {0}")]
    PhaseMismatch(String),
    #[error("target layout does not match robot count: {targets} targets, {robots} robots")]
    InvalidLayout { targets: usize, robots: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Tolerances threaded through the decision rules.
///
/// `eps_geom` guards geometric predicates (on-circle membership, clearance
/// boundaries); `eps_snap` decides when a robot counts as sitting at a point.
/// `phase_slack` is the hysteresis band of the phase dispatch: the enclosing
/// circle can sag this far below the target radius before expansion reopens.
/// Without the band the two phases livelock: filling a target can drop the
/// rim support microscopically, and the expansion step that repairs it
/// recreates the very configuration that sagged.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_geom: f64,
    pub eps_snap: f64,
    pub phase_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_geom: crate::DEFAULT_EPS_GEOM,
            eps_snap: crate::DEFAULT_EPS_SNAP,
            phase_slack: crate::DEFAULT_PHASE_SLACK,
        }
    }
}

impl Tolerances {
    pub fn geom<S: Scalar>(&self) -> S {
        S::from_f64_lossy(self.eps_geom)
    }

    pub fn snap<S: Scalar>(&self) -> S {
        S::from_f64_lossy(self.eps_snap)
    }

    pub fn slack<S: Scalar>(&self) -> S {
        S::from_f64_lossy(self.phase_slack)
    }

    /// Phase dispatch shared by the robots and the checker: expansion while
    /// the enclosing circle is more than the slack below the target radius.
    pub fn is_expansion_phase<S: Scalar>(&self, sec_radius: S, target_radius: S) -> bool {
        sec_radius < target_radius - self.slack::<S>().max(self.geom::<S>())
    }
}

/// The compute phase: dispatches on the current smallest enclosing circle.
/// If it is too small to hold all `n` discs at the required spacing the
/// circle is expanded; otherwise the robots fill the target positions laid
/// out on it (lifted to the target radius while the circle sags inside the
/// hysteresis band, so the final spacing never falls short).
pub fn compute<S: Scalar>(
    snapshot: &Snapshot<S>,
    tol: &Tolerances,
    tie: &mut TieBreaker,
) -> Result<Decision<S>, ComputeError> {
    snapshot.validate(tol)?;
    let sec = smallest_enclosing_circle(&snapshot.positions)?;
    if tol.is_expansion_phase(sec.radius, snapshot.spec.radius) {
        let report = detect_symmetry_and_leaders(&snapshot.positions, &sec, tol);
        sec_expansion_decision(snapshot, &sec, &report, tol, tie)
    } else {
        let circle = crate::geometry::Circle::new(
            sec.center,
            sec.radius.max(snapshot.spec.radius),
        );
        let layout = compute_target_points(&circle, &snapshot.positions, snapshot.spec.n, tol)?;
        form_ucircle_decision(snapshot, &layout, tol, tie)
    }
}
