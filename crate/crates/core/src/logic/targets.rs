//! Target positions for the final polygon, laid out on the current smallest
//! enclosing circle relative to its northern axis intersection.

use serde::{Deserialize, Serialize};

use super::{ComputeError, Tolerances};
use crate::geometry::{wrap_angle, Circle, Point2};
use crate::Scalar;

/// The `n` target points on a circle, each pair of angular neighbours
/// exactly `2 pi / n` apart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetLayout<S> {
    pub circle: Circle<S>,
    /// Northern intersection of the vertical axis with the circle; the
    /// layout's reference point.
    pub north: Point2<S>,
    /// Whether a robot occupies the reference point (then it is a target).
    pub anchored: bool,
    /// Target angles in `[0, 2 pi)`, sorted ascending.
    pub angles: Vec<S>,
    /// Target points, in the same order as `angles`.
    pub points: Vec<Point2<S>>,
}

/// Lays out the `n` targets. With a robot at the north intersection the
/// targets start there; otherwise the two targets nearest the north point
/// sit half a spacing to either side of it.
pub fn compute_target_points<S: Scalar>(
    sec: &Circle<S>,
    positions: &[Point2<S>],
    n: usize,
    tol: &Tolerances,
) -> Result<TargetLayout<S>, ComputeError> {
    if sec.radius <= S::zero() {
        return Err(ComputeError::InvalidConfiguration(
            "enclosing circle has zero radius".into(),
        ));
    }
    let north = sec.north_point();
    let anchored = positions
        .iter()
        .any(|&p| p.distance(north) <= tol.snap::<S>());

    let step = S::TAU() / S::from_usize(n).unwrap();
    let north_angle = S::FRAC_PI_2();
    let offset = if anchored { S::zero() } else { step * S::half() };

    let mut angles: Vec<S> = (0..n)
        .map(|k| wrap_angle(north_angle + offset + step * S::from_usize(k).unwrap()))
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    let points = angles.iter().map(|&a| sec.point_at_angle(a)).collect();

    Ok(TargetLayout {
        circle: *sec,
        north,
        anchored,
        angles,
        points,
    })
}
