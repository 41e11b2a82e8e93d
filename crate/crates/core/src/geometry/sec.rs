//! Smallest enclosing circle: an incremental randomized construction for
//! general use plus an exhaustive O(n^4) oracle for verification.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Circle, GeometryError, Point2};
use crate::Scalar;

// Fixed shuffle seed keeps the construction deterministic across runs while
// preserving the expected-linear behaviour of the incremental method.
const SHUFFLE_SEED: u64 = 0x5EC0_C1DE_u64;

fn enclosure_tol<S: Scalar>(radius: S) -> S {
    (S::one() + radius) * S::from_f64_lossy(1e-12)
}

fn contains<S: Scalar>(c: &Circle<S>, p: Point2<S>) -> bool {
    c.center.distance(p) <= c.radius + enclosure_tol(c.radius)
}

fn diameter_circle<S: Scalar>(a: Point2<S>, b: Point2<S>) -> Circle<S> {
    let center = (a + b) * S::half();
    Circle::new(center, center.distance(a).max(center.distance(b)))
}

/// Circumcircle of three points; `None` when they are collinear.
fn circumcircle<S: Scalar>(a: Point2<S>, b: Point2<S>, c: Point2<S>) -> Option<Circle<S>> {
    // Shift the coordinate origin near the points for numerical stability.
    let ox = (a.x.min(b.x).min(c.x) + a.x.max(b.x).max(c.x)) * S::half();
    let oy = (a.y.min(b.y).min(c.y) + a.y.max(b.y).max(c.y)) * S::half();
    let o = Point2::new(ox, oy);
    let (pa, pb, pc) = (a - o, b - o, c - o);
    let d = (pa.x * (pb.y - pc.y) + pb.x * (pc.y - pa.y) + pc.x * (pa.y - pb.y)) * S::two();
    if d == S::zero() {
        return None;
    }
    let x = (pa.norm_sq() * (pb.y - pc.y) + pb.norm_sq() * (pc.y - pa.y)
        + pc.norm_sq() * (pa.y - pb.y))
        / d;
    let y = (pa.norm_sq() * (pc.x - pb.x) + pb.norm_sq() * (pa.x - pc.x)
        + pc.norm_sq() * (pb.x - pa.x))
        / d;
    let center = o + Point2::new(x, y);
    let radius = center.distance(a).max(center.distance(b)).max(center.distance(c));
    Some(Circle::new(center, radius))
}

/// Smallest circle containing all the given points.
///
/// Incremental method: points are processed in a (deterministically) shuffled
/// order, growing the circle whenever a point falls outside the current one.
/// Collinear inputs are handled by the diameter case alone.
pub fn smallest_enclosing_circle<S: Scalar>(
    points: &[Point2<S>],
) -> Result<Circle<S>, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyPointSet);
    }
    let mut pts = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(SHUFFLE_SEED);
    pts.shuffle(&mut rng);

    let mut circle = Circle::new(pts[0], S::zero());
    for i in 1..pts.len() {
        if !contains(&circle, pts[i]) {
            circle = circle_with_one_boundary(&pts[..=i], pts[i]);
        }
    }
    Ok(circle)
}

fn circle_with_one_boundary<S: Scalar>(pts: &[Point2<S>], p: Point2<S>) -> Circle<S> {
    let mut circle = Circle::new(p, S::zero());
    for (i, &q) in pts.iter().enumerate() {
        if !contains(&circle, q) {
            circle = if circle.radius == S::zero() {
                diameter_circle(p, q)
            } else {
                circle_with_two_boundary(&pts[..=i], p, q)
            };
        }
    }
    circle
}

fn circle_with_two_boundary<S: Scalar>(
    pts: &[Point2<S>],
    p: Point2<S>,
    q: Point2<S>,
) -> Circle<S> {
    let base = diameter_circle(p, q);
    let pq = q - p;
    let mut left: Option<Circle<S>> = None;
    let mut right: Option<Circle<S>> = None;

    for &r in pts {
        if contains(&base, r) {
            continue;
        }
        let side = pq.cross(r - p);
        let Some(c) = circumcircle(p, q, r) else {
            continue;
        };
        let lateral = pq.cross(c.center - p);
        if side > S::zero() && left.map_or(true, |l| lateral > pq.cross(l.center - p)) {
            left = Some(c);
        } else if side < S::zero() && right.map_or(true, |r_| lateral < pq.cross(r_.center - p)) {
            right = Some(c);
        }
    }

    match (left, right) {
        (None, None) => base,
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => {
            if l.radius <= r.radius {
                l
            } else {
                r
            }
        }
    }
}

/// Exhaustive smallest-enclosing-circle oracle: every diameter pair and every
/// circumscribing triple is tried and the smallest enclosing candidate wins.
/// Independent of the incremental construction above; O(n^4), intended for
/// small inputs.
pub fn sec_bruteforce_oracle<S: Scalar>(
    points: &[Point2<S>],
) -> Result<Circle<S>, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyPointSet);
    }
    if points.len() == 1 {
        return Ok(Circle::new(points[0], S::zero()));
    }

    let encloses_all = |c: &Circle<S>| points.iter().all(|&p| contains(c, p));
    let mut best: Option<Circle<S>> = None;
    let mut consider = |c: Circle<S>| {
        if encloses_all(&c) && best.map_or(true, |b| c.radius < b.radius) {
            best = Some(c);
        }
    };

    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            consider(diameter_circle(points[i], points[j]));
            for k in (j + 1)..points.len() {
                if let Some(c) = circumcircle(points[i], points[j], points[k]) {
                    consider(c);
                }
            }
        }
    }

    best.ok_or_else(|| GeometryError::OutOfRange("no enclosing candidate found".into()))
}
