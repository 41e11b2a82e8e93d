use serde::{Deserialize, Serialize};

use super::Point2;
use crate::Scalar;

/// A circle given by center and radius. Used both for the smallest enclosing
/// circle of the robot centers and for the target circle of the formation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle<S> {
    pub center: Point2<S>,
    pub radius: S,
}

impl<S: Scalar> Circle<S> {
    pub fn new(center: Point2<S>, radius: S) -> Self {
        Self { center, radius }
    }

    pub fn contains(&self, p: Point2<S>, tol: S) -> bool {
        self.center.distance(p) <= self.radius + tol
    }

    /// Whether `p` lies on the circle boundary within `tol`.
    pub fn on_boundary(&self, p: Point2<S>, tol: S) -> bool {
        (self.center.distance(p) - self.radius).abs() <= tol
    }

    pub fn point_at_angle(&self, angle: S) -> Point2<S> {
        self.center + Point2::from_polar(self.radius, angle)
    }

    /// Polar angle of `p` as seen from the center.
    pub fn angle_of(&self, p: Point2<S>) -> S {
        (p - self.center).angle()
    }

    /// Northern intersection of the vertical axis through the center with
    /// the circle.
    pub fn north_point(&self) -> Point2<S> {
        self.center + Point2::new(S::zero(), self.radius)
    }
}

/// A robot body: a closed disc. All robots share radius 1 (the common robot
/// radius is the unit of length).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disc<S> {
    pub center: Point2<S>,
    pub radius: S,
}

impl<S: Scalar> Disc<S> {
    /// The standard unit-disc robot body.
    pub fn unit(center: Point2<S>) -> Self {
        Self {
            center,
            radius: S::one(),
        }
    }

    pub fn overlaps(&self, other: &Disc<S>) -> bool {
        self.center.distance(other.center) < self.radius + other.radius
    }
}
