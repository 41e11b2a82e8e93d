//! Planar geometric primitives shared by the robot logic, the simulator and
//! the checker. Everything here is a pure function over immutable inputs.

mod circle;
mod formation;
mod path;
mod point;
mod predicates;
mod sec;

pub use circle::{Circle, Disc};
pub use formation::{chord_for_angle, formation_radius, FormationSpec};
pub use path::{
    path_min_distance, plan_slide, point_arc_distance, segment_segment_distance, ArcDirection,
    Path, PathKind, PathPiece,
};
pub use point::Point2;
pub use predicates::{
    corridor_distance, first_blocker, is_free_path, is_free_path_eps, is_vacant,
    point_segment_distance,
};
pub use sec::{sec_bruteforce_oracle, smallest_enclosing_circle};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("invalid formation spec: n = {n} (need >= 3), side = {side} (need >= 3)")]
    InvalidSpec { n: usize, side: f64 },
    #[error("empty point set")]
    EmptyPointSet,
    #[error("degenerate path: source equals destination")]
    DegeneratePath,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

/// Wrap an angle into `[0, 2*pi)`.
pub fn wrap_angle<S: crate::Scalar>(a: S) -> S {
    let tau = S::TAU();
    let w = a - tau * (a / tau).floor();
    // floor can leave us exactly at tau for tiny negatives
    if w >= tau {
        w - tau
    } else {
        w
    }
}

/// Counterclockwise angular distance from `from` to `to`, in `[0, 2*pi)`.
pub fn ccw_delta<S: crate::Scalar>(from: S, to: S) -> S {
    wrap_angle(to - from)
}
