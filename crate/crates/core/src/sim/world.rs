use serde::{Deserialize, Serialize};

use super::SimError;
use crate::geometry::{FormationSpec, Point2};
use crate::logic::LocalFrame;
use crate::Scalar;

/// One robot as the simulator sees it: identity, ground-truth center, and
/// the private X orientation of its coordinate frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotState<S> {
    pub id: usize,
    pub center: Point2<S>,
    pub handedness: i8,
}

/// Ground-truth configuration of all robots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorldState<S> {
    pub spec: FormationSpec<S>,
    pub robots: Vec<RobotState<S>>,
    pub round: u64,
}

impl<S: Scalar> WorldState<S> {
    pub fn new(spec: FormationSpec<S>, robots: Vec<RobotState<S>>) -> Self {
        Self {
            spec,
            robots,
            round: 0,
        }
    }

    pub fn positions(&self) -> Vec<Point2<S>> {
        self.robots.iter().map(|r| r.center).collect()
    }

    pub fn frame(&self, index: usize) -> LocalFrame<S> {
        LocalFrame::new(self.robots[index].handedness, self.robots[index].center)
    }

    /// Minimum pairwise center distance; infinity for a single robot.
    pub fn min_separation(&self) -> S {
        let mut min = S::infinity();
        for i in 0..self.robots.len() {
            for j in (i + 1)..self.robots.len() {
                min = min.min(self.robots[i].center.distance(self.robots[j].center));
            }
        }
        min
    }

    pub fn validate(&self, eps: S) -> Result<(), SimError> {
        if self.robots.len() != self.spec.n {
            return Err(SimError::InvalidWorld(format!(
                "{} robots for n = {}",
                self.robots.len(),
                self.spec.n
            )));
        }
        if self.robots.iter().any(|r| !r.center.is_finite()) {
            return Err(SimError::InvalidWorld("non-finite position".into()));
        }
        let min = self.min_separation();
        if min < S::two() - eps {
            return Err(SimError::InvalidWorld(format!(
                "discs overlap: min center distance {min}"
            )));
        }
        Ok(())
    }
}
