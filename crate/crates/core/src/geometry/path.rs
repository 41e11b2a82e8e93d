//! Motion paths: straight segments, slides along the enclosing circle, and
//! slides around a single obstacle robot. Paths are parameterized by arc
//! length so simultaneous movers can be sampled at a common fraction.

use serde::{Deserialize, Serialize};

use super::{ccw_delta, point_segment_distance, Circle, GeometryError, Point2};
use crate::Scalar;

/// What kind of move a path realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathKind {
    /// Straight line move.
    Segment,
    /// Slide along the current smallest enclosing circle.
    SecArc,
    /// Straight-arc-straight detour around one obstacle robot.
    ObstacleSlide,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcDirection {
    Ccw,
    Cw,
}

/// One geometric piece of a path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PathPiece<S> {
    Line {
        from: Point2<S>,
        to: Point2<S>,
    },
    /// Circular arc from `start_angle` sweeping by `sweep` (signed; positive
    /// is counterclockwise).
    Arc {
        center: Point2<S>,
        radius: S,
        start_angle: S,
        sweep: S,
    },
}

impl<S: Scalar> PathPiece<S> {
    pub fn length(&self) -> S {
        match *self {
            PathPiece::Line { from, to } => from.distance(to),
            PathPiece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn start(&self) -> Point2<S> {
        match *self {
            PathPiece::Line { from, .. } => from,
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                ..
            } => center + Point2::from_polar(radius, start_angle),
        }
    }

    pub fn end(&self) -> Point2<S> {
        match *self {
            PathPiece::Line { to, .. } => to,
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center + Point2::from_polar(radius, start_angle + sweep),
        }
    }

    /// Point at arc length `s` from the piece start (clamped to the piece).
    pub fn point_at_length(&self, s: S) -> Point2<S> {
        match *self {
            PathPiece::Line { from, to } => {
                let len = from.distance(to);
                if len == S::zero() {
                    from
                } else {
                    from.lerp(to, (s / len).max(S::zero()).min(S::one()))
                }
            }
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let len = radius * sweep.abs();
                let t = if len == S::zero() {
                    S::zero()
                } else {
                    (s / len).max(S::zero()).min(S::one())
                };
                center + Point2::from_polar(radius, start_angle + sweep * t)
            }
        }
    }

    pub fn min_distance_to_point(&self, p: Point2<S>) -> S {
        match *self {
            PathPiece::Line { from, to } => point_segment_distance(p, from, to),
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => point_arc_distance(p, center, radius, start_angle, sweep),
        }
    }
}

/// Distance from `p` to the arc given by center/radius/start/sweep.
pub fn point_arc_distance<S: Scalar>(
    p: Point2<S>,
    center: Point2<S>,
    radius: S,
    start_angle: S,
    sweep: S,
) -> S {
    let rel = p - center;
    let phi = rel.angle();
    let within = if sweep >= S::zero() {
        ccw_delta(start_angle, phi) <= sweep
    } else {
        ccw_delta(phi, start_angle) <= -sweep
    };
    if within {
        (rel.norm() - radius).abs()
    } else {
        let a = center + Point2::from_polar(radius, start_angle);
        let b = center + Point2::from_polar(radius, start_angle + sweep);
        p.distance(a).min(p.distance(b))
    }
}

/// An oriented path from a robot's current center to its destination.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Path<S> {
    pub kind: PathKind,
    pub pieces: Vec<PathPiece<S>>,
}

impl<S: Scalar> Path<S> {
    /// Builds a path, validating piece connectivity and nonzero length.
    pub fn new(kind: PathKind, pieces: Vec<PathPiece<S>>) -> Result<Self, GeometryError> {
        if pieces.is_empty() {
            return Err(GeometryError::DegeneratePath);
        }
        let join_tol = S::from_f64_lossy(1e-9);
        for w in pieces.windows(2) {
            if w[0].end().distance(w[1].start()) > join_tol {
                return Err(GeometryError::OutOfRange(
                    "path pieces are not connected".into(),
                ));
            }
        }
        let path = Self { kind, pieces };
        if path.total_length() <= S::zero() {
            return Err(GeometryError::DegeneratePath);
        }
        Ok(path)
    }

    pub fn segment(from: Point2<S>, to: Point2<S>) -> Result<Self, GeometryError> {
        if from == to {
            return Err(GeometryError::DegeneratePath);
        }
        Self::new(PathKind::Segment, vec![PathPiece::Line { from, to }])
    }

    /// Arc along `circle` from `from` to `to` in the given direction. Both
    /// points are projected onto the circle by angle.
    pub fn sec_arc(
        circle: &Circle<S>,
        from: Point2<S>,
        to: Point2<S>,
        direction: ArcDirection,
    ) -> Result<Self, GeometryError> {
        let a0 = circle.angle_of(from);
        let a1 = circle.angle_of(to);
        let sweep = match direction {
            ArcDirection::Ccw => ccw_delta(a0, a1),
            ArcDirection::Cw => -ccw_delta(a1, a0),
        };
        if sweep == S::zero() {
            return Err(GeometryError::DegeneratePath);
        }
        Self::new(
            PathKind::SecArc,
            vec![PathPiece::Arc {
                center: circle.center,
                radius: circle.radius,
                start_angle: a0,
                sweep,
            }],
        )
    }

    pub fn start(&self) -> Point2<S> {
        self.pieces.first().expect("non-empty path").start()
    }

    pub fn end(&self) -> Point2<S> {
        self.pieces.last().expect("non-empty path").end()
    }

    pub fn total_length(&self) -> S {
        self.pieces
            .iter()
            .fold(S::zero(), |acc, p| acc + p.length())
    }

    /// Point at fraction `t` of the total arc length; `t` must be in [0, 1].
    pub fn point_at(&self, t: S) -> Result<Point2<S>, GeometryError> {
        if t < S::zero() || t > S::one() {
            return Err(GeometryError::OutOfRange(format!(
                "path parameter {t} outside [0, 1]"
            )));
        }
        let mut remaining = self.total_length() * t;
        for piece in &self.pieces {
            let len = piece.length();
            if remaining <= len {
                return Ok(piece.point_at_length(remaining));
            }
            remaining = remaining - len;
        }
        Ok(self.end())
    }

    pub fn min_distance_to_point(&self, p: Point2<S>) -> S {
        self.pieces
            .iter()
            .map(|piece| piece.min_distance_to_point(p))
            .fold(S::infinity(), S::min)
    }

    /// Whether every point of the path keeps at least `clearance` distance
    /// from every center in `obstacles`.
    pub fn clear_of(&self, obstacles: &[Point2<S>], clearance: S) -> bool {
        obstacles
            .iter()
            .all(|&o| self.min_distance_to_point(o) >= clearance)
    }
}

pub fn segment_segment_distance<S: Scalar>(
    a0: Point2<S>,
    a1: Point2<S>,
    b0: Point2<S>,
    b1: Point2<S>,
) -> S {
    let d1 = a1 - a0;
    let d2 = b1 - b0;
    // Proper crossing means distance zero.
    let denom = d1.cross(d2);
    if denom != S::zero() {
        let t = (b0 - a0).cross(d2) / denom;
        let u = (b0 - a0).cross(d1) / denom;
        if t >= S::zero() && t <= S::one() && u >= S::zero() && u <= S::one() {
            return S::zero();
        }
    }
    point_segment_distance(a0, b0, b1)
        .min(point_segment_distance(a1, b0, b1))
        .min(point_segment_distance(b0, a0, a1))
        .min(point_segment_distance(b1, a0, a1))
}

const ARC_SAMPLES: usize = 512;

fn piece_pair_min_distance<S: Scalar>(a: &PathPiece<S>, b: &PathPiece<S>) -> S {
    match (a, b) {
        (PathPiece::Line { from: a0, to: a1 }, PathPiece::Line { from: b0, to: b1 }) => {
            segment_segment_distance(*a0, *a1, *b0, *b1)
        }
        // At least one arc: sample it and measure exactly against the other
        // piece. Sampling error is bounded by the chord sagitta at 512 steps,
        // far below the clearance margins used by callers.
        (arc @ PathPiece::Arc { .. }, other) | (other, arc @ PathPiece::Arc { .. }) => {
            let len = arc.length();
            let mut min = S::infinity();
            for i in 0..=ARC_SAMPLES {
                let s = len * S::from_usize(i).unwrap() / S::from_usize(ARC_SAMPLES).unwrap();
                let p = arc.point_at_length(s);
                min = min.min(other.min_distance_to_point(p));
            }
            min
        }
    }
}

/// Minimum distance between any point of `a` and any point of `b`,
/// irrespective of traversal timing. Exact for segment pairs, sampled when
/// arcs are involved.
pub fn path_min_distance<S: Scalar>(a: &Path<S>, b: &Path<S>) -> S {
    let mut min = S::infinity();
    for pa in &a.pieces {
        for pb in &b.pieces {
            min = min.min(piece_pair_min_distance(pa, pb));
        }
    }
    min
}

/// Shortest detour from `from` to `to` around a single obstacle robot at
/// `obstacle`: straight to the tangency point of the radius-`clearance`
/// circle, an arc in sliding contact, then straight to the destination.
///
/// `side` picks which way around; returns `None` when an endpoint is strictly
/// inside the clearance circle (no tangent exists).
pub fn plan_slide<S: Scalar>(
    from: Point2<S>,
    to: Point2<S>,
    obstacle: Point2<S>,
    clearance: S,
    side: ArcDirection,
) -> Option<Path<S>> {
    let tol = S::from_f64_lossy(1e-12);
    let df = from.distance(obstacle);
    let dt = to.distance(obstacle);
    if df < clearance - tol || dt < clearance - tol {
        return None;
    }
    // Clamp ratios into acos domain for endpoints exactly on the circle.
    let beta_f = (clearance / df.max(clearance)).min(S::one()).acos();
    let beta_t = (clearance / dt.max(clearance)).min(S::one()).acos();
    let phi_f = (from - obstacle).angle();
    let phi_t = (to - obstacle).angle();

    let (touch_f, touch_t, sweep) = match side {
        ArcDirection::Ccw => {
            let a = phi_f + beta_f;
            let b = phi_t - beta_t;
            (a, b, ccw_delta(a, b))
        }
        ArcDirection::Cw => {
            let a = phi_f - beta_f;
            let b = phi_t + beta_t;
            (a, b, -ccw_delta(b, a))
        }
    };

    let entry = obstacle + Point2::from_polar(clearance, touch_f);
    let exit = obstacle + Point2::from_polar(clearance, touch_t);

    let mut pieces = Vec::new();
    if from.distance(entry) > tol {
        pieces.push(PathPiece::Line { from, to: entry });
    }
    if sweep.abs() > tol {
        pieces.push(PathPiece::Arc {
            center: obstacle,
            radius: clearance,
            start_angle: touch_f,
            sweep,
        });
    }
    if exit.distance(to) > tol {
        pieces.push(PathPiece::Line { from: exit, to });
    }
    Path::new(PathKind::ObstacleSlide, pieces).ok()
}
