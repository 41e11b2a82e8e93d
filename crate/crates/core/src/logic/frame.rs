use serde::{Deserialize, Serialize};

use super::{Action, ComputeError, Decision, Tolerances};
use crate::geometry::{FormationSpec, Path, PathPiece, Point2};
use crate::Scalar;

/// A robot's private coordinate frame: origin at its own center, Y pointing
/// the globally agreed way, X orientation private (`handedness` is +1 or -1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalFrame<S> {
    pub handedness: i8,
    pub origin: Point2<S>,
}

impl<S: Scalar> LocalFrame<S> {
    pub fn new(handedness: i8, origin: Point2<S>) -> Self {
        debug_assert!(handedness == 1 || handedness == -1);
        Self { handedness, origin }
    }

    fn h(&self) -> S {
        S::from_i8(self.handedness).unwrap()
    }

    pub fn to_local(&self, p: Point2<S>) -> Point2<S> {
        Point2::new(self.h() * (p.x - self.origin.x), p.y - self.origin.y)
    }

    pub fn to_global(&self, p: Point2<S>) -> Point2<S> {
        Point2::new(self.origin.x + self.h() * p.x, self.origin.y + p.y)
    }

    /// Snapshot of the world as this robot sees it.
    pub fn snapshot(
        &self,
        global_positions: &[Point2<S>],
        self_index: usize,
        spec: FormationSpec<S>,
    ) -> Snapshot<S> {
        Snapshot {
            positions: global_positions.iter().map(|&p| self.to_local(p)).collect(),
            self_index,
            spec,
        }
    }

    fn piece_to_global(&self, piece: &PathPiece<S>) -> PathPiece<S> {
        match *piece {
            PathPiece::Line { from, to } => PathPiece::Line {
                from: self.to_global(from),
                to: self.to_global(to),
            },
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                // Mirroring flips arc orientation: angle t maps to pi - t.
                let (start_angle, sweep) = if self.handedness == 1 {
                    (start_angle, sweep)
                } else {
                    (S::PI() - start_angle, -sweep)
                };
                PathPiece::Arc {
                    center: self.to_global(center),
                    radius,
                    start_angle,
                    sweep,
                }
            }
        }
    }

    pub fn path_to_global(&self, path: &Path<S>) -> Path<S> {
        Path {
            kind: path.kind,
            pieces: path.pieces.iter().map(|p| self.piece_to_global(p)).collect(),
        }
    }

    /// Maps a decision computed in this frame back to global coordinates.
    pub fn decision_to_global(&self, decision: Decision<S>) -> Decision<S> {
        Decision {
            action: match decision.action {
                Action::Stay => Action::Stay,
                Action::Move { destination, path } => Action::Move {
                    destination: self.to_global(destination),
                    path: self.path_to_global(&path),
                },
            },
            candidates: decision
                .candidates
                .iter()
                .map(|&c| self.to_global(c))
                .collect(),
            expansion: decision.expansion.map(|m| super::ExpansionMeta {
                branch: m.branch,
                anchor: self.to_global(m.anchor),
            }),
            ..decision
        }
    }
}

/// What a robot sees during its look phase: every robot center expressed in
/// its own frame (itself at the origin) plus the common formation inputs.
/// `self_index` is simulator book-keeping only; no decision rule reads
/// anything from it beyond "which entry is me".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot<S> {
    pub positions: Vec<Point2<S>>,
    pub self_index: usize,
    pub spec: FormationSpec<S>,
}

impl<S: Scalar> Snapshot<S> {
    pub fn own_position(&self) -> Point2<S> {
        self.positions[self.self_index]
    }

    pub(crate) fn validate(&self, tol: &Tolerances) -> Result<(), ComputeError> {
        if self.positions.len() != self.spec.n {
            return Err(ComputeError::InvalidConfiguration(format!(
                "snapshot holds {} positions for n = {}",
                self.positions.len(),
                self.spec.n
            )));
        }
        if self.self_index >= self.positions.len() {
            return Err(ComputeError::InvalidConfiguration(
                "self index out of range".into(),
            ));
        }
        let min_sep = S::two() - tol.geom::<S>();
        for i in 0..self.positions.len() {
            if !self.positions[i].is_finite() {
                return Err(ComputeError::InvalidConfiguration(format!(
                    "non-finite position for robot {i}"
                )));
            }
            for j in (i + 1)..self.positions.len() {
                let d = self.positions[i].distance(self.positions[j]);
                if d < min_sep {
                    return Err(ComputeError::InvalidConfiguration(format!(
                        "robots {i} and {j} overlap: center distance {d}"
                    )));
                }
            }
        }
        Ok(())
    }
}
