//! Clearance predicates: the free-path corridor test and target vacancy.

use super::{Disc, GeometryError, Point2};
use crate::{Scalar, DEFAULT_EPS_GEOM};

/// Distance from `p` to the motion corridor of a robot travelling from
/// `source` to `dest`: the rectangle of length `|source - dest|` and total
/// width 2 centered on the segment.
pub fn corridor_distance<S: Scalar>(source: Point2<S>, dest: Point2<S>, p: Point2<S>) -> S {
    let axis = dest - source;
    let len = axis.norm();
    let dir = axis / len;
    let rel = p - source;
    let along = rel.dot(dir);
    let across = rel.cross(dir).abs();
    let du = (-along).max(along - len).max(S::zero());
    let dv = (across - S::one()).max(S::zero());
    (du * du + dv * dv).sqrt()
}

/// Whether the corridor from `source` to `dest` contains no part of any disc
/// in `others`. A disc intersects the corridor iff its center is strictly
/// closer than its radius; grazing contact counts as free.
pub fn is_free_path<S: Scalar>(
    source: Point2<S>,
    dest: Point2<S>,
    others: &[Disc<S>],
) -> Result<bool, GeometryError> {
    is_free_path_eps(source, dest, others, S::from_f64_lossy(DEFAULT_EPS_GEOM))
}

/// [`is_free_path`] with an explicit boundary tolerance.
pub fn is_free_path_eps<S: Scalar>(
    source: Point2<S>,
    dest: Point2<S>,
    others: &[Disc<S>],
    eps: S,
) -> Result<bool, GeometryError> {
    if source == dest {
        return Err(GeometryError::DegeneratePath);
    }
    Ok(others
        .iter()
        .all(|d| corridor_distance(source, dest, d.center) >= d.radius - eps))
}

/// Whether the closed unit disc around `point` is clear of every disc in
/// `others`; for unit-disc robots this is "every other center at distance
/// at least 2".
pub fn is_vacant<S: Scalar>(point: Point2<S>, others: &[Disc<S>]) -> bool {
    others
        .iter()
        .all(|d| point.distance(d.center) >= d.radius + S::one())
}

pub fn point_segment_distance<S: Scalar>(p: Point2<S>, a: Point2<S>, b: Point2<S>) -> S {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == S::zero() {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len_sq).max(S::zero()).min(S::one());
    p.distance(a + ab * t)
}

/// Index of the disc blocking the corridor from `source` to `dest` that is
/// met first along the travel direction, if any.
pub fn first_blocker<S: Scalar>(
    source: Point2<S>,
    dest: Point2<S>,
    others: &[Disc<S>],
    eps: S,
) -> Option<usize> {
    let axis = dest - source;
    let len = axis.norm();
    if len == S::zero() {
        return None;
    }
    let dir = axis / len;
    others
        .iter()
        .enumerate()
        .filter(|(_, d)| corridor_distance(source, dest, d.center) < d.radius - eps)
        .map(|(i, d)| {
            let along = (d.center - source).dot(dir).max(S::zero()).min(len);
            (i, along)
        })
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite distances"))
        .map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn discs(centers: &[(f64, f64)]) -> Vec<Disc<f64>> {
        centers
            .iter()
            .map(|&(x, y)| Disc::unit(Point2::new(x, y)))
            .collect()
    }

    #[test]
    fn free_path_clears_far_disc() {
        // Distance from (5, 2.5) to the corridor is 1.5 > 1.
        let o = discs(&[(5.0, 2.5)]);
        assert!(is_free_path(Point2::new(0.0, 0.0), Point2::new(10.0, 0.0), &o).unwrap());
    }

    #[test]
    fn free_path_blocked_by_near_disc() {
        // Distance 0.5 < 1.
        let o = discs(&[(5.0, 1.5)]);
        assert!(!is_free_path(Point2::new(0.0, 0.0), Point2::new(10.0, 0.0), &o).unwrap());
    }

    #[test]
    fn free_path_no_obstacles() {
        assert!(is_free_path::<f64>(Point2::new(0.0, 0.0), Point2::new(10.0, 0.0), &[]).unwrap());
    }

    #[test]
    fn free_path_degenerate() {
        let p = Point2::new(1.0, 1.0);
        assert_eq!(
            is_free_path::<f64>(p, p, &[]).unwrap_err(),
            GeometryError::DegeneratePath
        );
    }

    #[test]
    fn boundary_contact_is_free() {
        // Center exactly 2 off the axis: corridor distance exactly 1.
        let o = discs(&[(5.0, 2.0)]);
        assert!(is_free_path(Point2::new(0.0, 0.0), Point2::new(10.0, 0.0), &o).unwrap());
    }

    #[test]
    fn vacancy_threshold() {
        let at = Point2::new(0.0, 0.0);
        assert!(is_vacant(at, &discs(&[(0.0, 2.1)])));
        assert!(!is_vacant(at, &discs(&[(0.0, 1.9)])));
        assert!(is_vacant::<f64>(at, &[]));
        // contact at exactly 2 is vacant
        assert!(is_vacant(at, &discs(&[(2.0, 0.0)])));
    }

    #[test]
    fn first_blocker_picks_nearest_along() {
        let o = discs(&[(7.0, 0.5), (3.0, -0.5)]);
        let idx = first_blocker(
            Point2::new(0.0, 0.0),
            Point2::new(10.0, 0.0),
            &o,
            1e-9,
        );
        assert_eq!(idx, Some(1));
    }
}
