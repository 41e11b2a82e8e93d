use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{Path, Point2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Expansion,
    Formation,
}

/// A robot's computed action for the coming move phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Action<S> {
    Stay,
    Move {
        destination: Point2<S>,
        path: Path<S>,
    },
}

impl<S> Action<S> {
    pub fn is_move(&self) -> bool {
        matches!(self, Action::Move { .. })
    }
}

/// Which expansion rule produced a move. `Radial` steps the leader outward
/// along its diameter; `Landing` sends the leader to the computed landing
/// point beyond the circle; `Delegated` sends the nearest free-path robot
/// there instead when the leader is boxed in. `RadialFallback` is the escape
/// hatch when every landing is unusable: a plain outward step, which can
/// never reduce a pairwise distance, taken only if it grows the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpansionBranch {
    Radial,
    Landing,
    Delegated,
    RadialFallback,
}

/// Book-keeping for expansion moves, kept in the trace so the checker can
/// verify that mover and anchor end up on the new enclosing circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionMeta<S> {
    pub branch: ExpansionBranch,
    /// The stationary robot that pins the new circle together with the
    /// mover: the antipodal occupant for radial steps, the far rim robot
    /// for landing moves.
    pub anchor: Point2<S>,
}

/// Flags recorded alongside a decision; these surface rule fallbacks and
/// waiting states in the trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecisionNote {
    /// Leader election had no rule-conforming candidate; fell back to the
    /// highest rim robot.
    LeaderFallback,
    /// Mover waits because an on-target robot will vacate its spot first.
    CascadeWait,
    /// On-target robot moves on to the next target to open the ring.
    CascadeMove,
    /// Designated mover found no clear path this round.
    Blocked,
    /// Partial occupant waits for its target surroundings to clear.
    PartialBlocked,
    /// Partial occupant snaps onto the target it already covers.
    PartialSnap,
}

/// A seeded choice between indistinguishable mirror options.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TieEvent {
    pub context: String,
    pub options: u32,
    pub chosen: u32,
}

/// Scheduler-supplied randomness for residual mirror ties, seeded per
/// (round, robot) so replays are exact. Every draw is recorded.
#[derive(Debug)]
pub struct TieBreaker {
    rng: ChaCha8Rng,
    pub events: Vec<TieEvent>,
}

impl TieBreaker {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            events: Vec::new(),
        }
    }

    pub fn pick(&mut self, context: &str, options: u32) -> u32 {
        debug_assert!(options > 0);
        let chosen = self.rng.gen_range(0..options);
        self.events.push(TieEvent {
            context: context.to_string(),
            options,
            chosen,
        });
        chosen
    }
}

/// Compute-phase output: the action, the phase that produced it, and the set
/// of destinations that were admissible (more than one only when a mirror
/// tie was resolved by seed).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decision<S> {
    pub phase: Phase,
    pub action: Action<S>,
    /// All destinations the rules would admit for this robot this round.
    pub candidates: Vec<Point2<S>>,
    pub notes: Vec<DecisionNote>,
    pub tie_events: Vec<TieEvent>,
    pub expansion: Option<ExpansionMeta<S>>,
}

impl<S> Decision<S> {
    pub fn stay(phase: Phase) -> Self {
        Self {
            phase,
            action: Action::Stay,
            candidates: Vec::new(),
            notes: Vec::new(),
            tie_events: Vec::new(),
            expansion: None,
        }
    }

    pub fn with_note(mut self, note: DecisionNote) -> Self {
        self.notes.push(note);
        self
    }
}
