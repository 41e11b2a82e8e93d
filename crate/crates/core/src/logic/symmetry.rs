//! Mirror-symmetry analysis and leader election for the expansion phase.
//!
//! The election looks at the vertical axis through the center of the
//! smallest enclosing circle. Asymmetric configurations elect the highest
//! rim robot without a mirror partner; symmetric ones elect the highest
//! mirror pair on the rim, skipping a robot that occupies the northern axis
//! intersection.

use serde::{Deserialize, Serialize};

use super::Tolerances;
use crate::geometry::{Circle, Point2};
use crate::Scalar;

/// Which rule produced the leaders, mostly for trace diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeaderRule {
    /// Asymmetric: single highest no-mirror rim robot.
    Asymmetric,
    /// Symmetric, north intersection vacant: highest rim mirror pair.
    SymmetricPair,
    /// Symmetric with a robot on the north intersection: next-highest pair.
    SymmetricPairBelowNorth,
    /// No rule-conforming candidate existed; highest rim robot chosen.
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport<S> {
    /// X coordinate of the vertical symmetry axis (through the SEC center).
    pub axis_x: S,
    pub symmetric: bool,
    pub north_robot_present: bool,
    /// Indices of the elected leaders (one, or a mirror pair).
    pub leaders: Vec<usize>,
    pub rule: LeaderRule,
}

impl<S: Scalar> SymmetryReport<S> {
    pub fn leader_positions(&self, positions: &[Point2<S>]) -> Vec<Point2<S>> {
        self.leaders.iter().map(|&i| positions[i]).collect()
    }
}

fn mirror_partner<S: Scalar>(
    positions: &[Point2<S>],
    i: usize,
    axis_x: S,
    eps: S,
) -> Option<usize> {
    let m = positions[i].mirror_x(axis_x);
    positions
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .find(|&(_, p)| p.distance(m) <= eps)
        .map(|(j, _)| j)
}

fn max_by_y<S: Scalar, I: Iterator<Item = usize>>(
    positions: &[Point2<S>],
    candidates: I,
) -> Option<usize> {
    candidates.max_by(|&a, &b| {
        positions[a]
            .y
            .partial_cmp(&positions[b].y)
            .expect("finite coordinates")
    })
}

/// Elects the robots that will enlarge the enclosing circle.
pub fn detect_symmetry_and_leaders<S: Scalar>(
    positions: &[Point2<S>],
    sec: &Circle<S>,
    tol: &Tolerances,
) -> SymmetryReport<S> {
    let eps = tol.geom::<S>();
    let snap = tol.snap::<S>();
    let axis_x = sec.center.x;

    let on_axis = |i: usize| (positions[i].x - axis_x).abs() <= eps;
    let on_rim: Vec<bool> = positions
        .iter()
        .map(|&p| sec.on_boundary(p, eps))
        .collect();
    let partner: Vec<Option<usize>> = (0..positions.len())
        .map(|i| {
            if on_axis(i) {
                Some(i) // a robot on the axis is its own mirror image
            } else {
                mirror_partner(positions, i, axis_x, eps)
            }
        })
        .collect();

    let symmetric = partner.iter().all(Option::is_some);
    let north = sec.north_point();
    let north_robot = positions
        .iter()
        .position(|&p| p.distance(north) <= snap);

    if !symmetric {
        // Highest rim robot without a mirror partner (axis robots skipped:
        // they mirror onto themselves and may not lead here).
        let candidates = (0..positions.len())
            .filter(|&i| on_rim[i] && !on_axis(i) && partner[i].is_none());
        if let Some(leader) = max_by_y(positions, candidates) {
            return SymmetryReport {
                axis_x,
                symmetric,
                north_robot_present: north_robot.is_some(),
                leaders: vec![leader],
                rule: LeaderRule::Asymmetric,
            };
        }
        // Every rim robot is mirrored even though the set as a whole is not:
        // fall back to the highest off-axis rim robot, then to the highest
        // rim robot outright.
        let off_axis = (0..positions.len()).filter(|&i| on_rim[i] && !on_axis(i));
        let leader = max_by_y(positions, off_axis)
            .or_else(|| max_by_y(positions, (0..positions.len()).filter(|&i| on_rim[i])))
            .expect("the enclosing circle has rim robots");
        return SymmetryReport {
            axis_x,
            symmetric,
            north_robot_present: north_robot.is_some(),
            leaders: vec![leader],
            rule: LeaderRule::Fallback,
        };
    }

    // Symmetric: find the highest off-axis mirror pair on the rim. A robot
    // sitting on the north intersection never leads.
    let mut best_pair: Option<(usize, usize)> = None;
    for i in 0..positions.len() {
        if !on_rim[i] || on_axis(i) {
            continue;
        }
        let Some(j) = partner[i] else { continue };
        if j == i || !on_rim[j] {
            continue;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        if best_pair.map_or(true, |(p, _)| positions[a].y > positions[p].y) {
            best_pair = Some((a, b));
        }
    }

    if let Some((a, b)) = best_pair {
        let rule = if north_robot.is_some() {
            LeaderRule::SymmetricPairBelowNorth
        } else {
            LeaderRule::SymmetricPair
        };
        return SymmetryReport {
            axis_x,
            symmetric,
            north_robot_present: north_robot.is_some(),
            leaders: vec![a, b],
            rule,
        };
    }

    // Symmetric but only axis robots sit on the rim (a vertical diameter
    // configuration). Prefer a rim robot that is not the north one.
    let non_north = (0..positions.len()).filter(|&i| on_rim[i] && Some(i) != north_robot);
    let leader = max_by_y(positions, non_north)
        .or_else(|| max_by_y(positions, (0..positions.len()).filter(|&i| on_rim[i])))
        .expect("the enclosing circle has rim robots");
    SymmetryReport {
        axis_x,
        symmetric,
        north_robot_present: north_robot.is_some(),
        leaders: vec![leader],
        rule: LeaderRule::Fallback,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_circle(angles_deg: &[f64], r: f64) -> Vec<Point2<f64>> {
        angles_deg
            .iter()
            .map(|a| Point2::from_polar(r, a.to_radians()))
            .collect()
    }

    fn sec2() -> Circle<f64> {
        Circle::new(Point2::zero(), 2.0)
    }

    #[test]
    fn asymmetric_single_leader() {
        let pts = on_circle(&[45.0, 190.0, 225.0], 2.0);
        let rep = detect_symmetry_and_leaders(&pts, &sec2(), &Tolerances::default());
        assert!(!rep.symmetric);
        assert_eq!(rep.rule, LeaderRule::Asymmetric);
        assert_eq!(rep.leaders, vec![0]); // the 45-degree robot has max Y
    }

    #[test]
    fn symmetric_with_north_robot_takes_next_pair() {
        let pts = on_circle(&[90.0, 30.0, 150.0], 2.0);
        let rep = detect_symmetry_and_leaders(&pts, &sec2(), &Tolerances::default());
        assert!(rep.symmetric);
        assert!(rep.north_robot_present);
        assert_eq!(rep.rule, LeaderRule::SymmetricPairBelowNorth);
        let mut leaders = rep.leaders.clone();
        leaders.sort_unstable();
        assert_eq!(leaders, vec![1, 2]); // 30 and 150 degrees
    }

    #[test]
    fn symmetric_without_north_robot_takes_top_pair() {
        let pts = on_circle(&[60.0, 120.0, 240.0, 300.0], 2.0);
        let rep = detect_symmetry_and_leaders(&pts, &sec2(), &Tolerances::default());
        assert!(rep.symmetric);
        assert!(!rep.north_robot_present);
        assert_eq!(rep.rule, LeaderRule::SymmetricPair);
        let mut leaders = rep.leaders.clone();
        leaders.sort_unstable();
        assert_eq!(leaders, vec![0, 1]); // 60 and 120 degrees
    }

    #[test]
    fn vertical_diameter_falls_back_to_south_robot() {
        // Rim robots only on the axis; interior pair keeps it symmetric.
        let pts = vec![
            Point2::new(0.0, 2.0),
            Point2::new(0.0, -2.0),
            Point2::new(1.0, 0.0),
            Point2::new(-1.0, 0.0),
        ];
        let rep = detect_symmetry_and_leaders(&pts, &sec2(), &Tolerances::default());
        assert!(rep.symmetric);
        assert!(rep.north_robot_present);
        assert_eq!(rep.rule, LeaderRule::Fallback);
        assert_eq!(rep.leaders, vec![1]); // south robot, not the north one
    }
}
