//! Filling the target positions once the enclosing circle is large enough.
//!
//! Service order: only the highest vacant target (or a mirror pair at equal
//! height) is serviced per round, by the robot nearest to it. Robots already
//! on the rim slide along the circle; interior robots go straight or slide
//! around a single obstacle robot. A robot parked on a target between the
//! mover and its goal can be re-designated to open the ring (the cascade),
//! with the original mover waiting for the vacated spot.

use super::{
    Action, ComputeError, Decision, DecisionNote, Phase, Snapshot, TargetLayout, TieBreaker,
    Tolerances,
};
use crate::geometry::{
    ccw_delta, is_free_path_eps, plan_slide, ArcDirection, Disc, Path, PathPiece,
    Point2,
};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    /// Sitting on this target (within snap tolerance).
    OnTarget(usize),
    /// Covering this target with its disc without being centered on it.
    Partial(usize),
    Free,
}

fn classify<S: Scalar>(
    positions: &[Point2<S>],
    layout: &TargetLayout<S>,
    tol: &Tolerances,
) -> Vec<Role> {
    // A robot counts as settled only well below the snap tolerance. The
    // layout circle drifts by a hair whenever a rim robot lands, so robots
    // within the snap band keep polishing their position; freezing at the
    // snap tolerance itself leaves the final spacing measurably short.
    let settled = tol.snap::<S>() * S::from_f64_lossy(1e-3);
    positions
        .iter()
        .map(|&p| {
            let (k, d) = nearest_target(p, layout);
            if d <= settled {
                Role::OnTarget(k)
            } else if d < S::one() {
                Role::Partial(k)
            } else {
                Role::Free
            }
        })
        .collect()
}

fn nearest_target<S: Scalar>(p: Point2<S>, layout: &TargetLayout<S>) -> (usize, S) {
    layout
        .points
        .iter()
        .enumerate()
        .map(|(k, &t)| (k, p.distance(t)))
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite distances"))
        .expect("layout has targets")
}

fn discs_except<S: Scalar>(positions: &[Point2<S>], skip: usize) -> Vec<Disc<S>> {
    positions
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &p)| Disc::unit(p))
        .collect()
}

/// Nearest free robots to `target`; ties go to the higher robot, and only an
/// exact distance-and-height tie (a mirror pair) leaves two candidates.
fn candidates_for<S: Scalar>(
    target: Point2<S>,
    positions: &[Point2<S>],
    roles: &[Role],
    eps: S,
) -> Vec<usize> {
    let free: Vec<(usize, S)> = roles
        .iter()
        .enumerate()
        .filter(|&(_, r)| *r == Role::Free)
        .map(|(i, _)| (i, positions[i].distance(target)))
        .collect();
    let Some(best) = free
        .iter()
        .map(|&(_, d)| d)
        .min_by(|a, b| a.partial_cmp(b).expect("finite distances"))
    else {
        return Vec::new();
    };
    let nearest: Vec<usize> = free
        .iter()
        .filter(|&&(_, d)| d <= best + eps)
        .map(|&(i, _)| i)
        .collect();
    let top_y = nearest
        .iter()
        .map(|&i| positions[i].y)
        .fold(S::neg_infinity(), S::max);
    nearest
        .into_iter()
        .filter(|&i| positions[i].y >= top_y - eps)
        .collect()
}

/// Shorter arc direction from `from` to `to` on `circle`; `None` on an
/// antipodal tie, which no deterministic common rule can break.
fn shorter_arc_direction<S: Scalar>(
    circle: &crate::geometry::Circle<S>,
    from: Point2<S>,
    to: Point2<S>,
    eps: S,
) -> Option<ArcDirection> {
    let a = circle.angle_of(from);
    let b = circle.angle_of(to);
    let ccw = ccw_delta(a, b);
    let cw = ccw_delta(b, a);
    if (ccw - cw).abs() <= eps {
        None
    } else if ccw < cw {
        Some(ArcDirection::Ccw)
    } else {
        Some(ArcDirection::Cw)
    }
}

fn arc_clear<S: Scalar>(
    path: &Path<S>,
    positions: &[Point2<S>],
    mover: usize,
    clearance: S,
) -> bool {
    positions
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != mover)
        .all(|(_, &p)| path.min_distance_to_point(p) >= clearance)
}

/// The robot that opens the ring for mover `m` heading to `target`, if the
/// cascade applies: an on-target robot blocking `m`'s arc whose own arc to
/// the target is clear. Both `m` and the blocker derive this identically.
fn cascade_mover_for<S: Scalar>(
    m: usize,
    target_idx: usize,
    positions: &[Point2<S>],
    roles: &[Role],
    layout: &TargetLayout<S>,
    tol: &Tolerances,
) -> Option<usize> {
    let eps = tol.geom::<S>();
    let clearance = S::two() - eps;
    let target = layout.points[target_idx];
    let mp = positions[m];
    if !layout.circle.on_boundary(mp, eps) {
        return None;
    }
    let dir = shorter_arc_direction(&layout.circle, mp, target, eps)?;
    let arc = Path::sec_arc(&layout.circle, mp, target, dir).ok()?;
    if arc_clear(&arc, positions, m, clearance) {
        return None; // nothing to open
    }

    let qualifying = (0..positions.len()).filter(|&r| {
        r != m
            && matches!(roles[r], Role::OnTarget(_))
            && arc.min_distance_to_point(positions[r]) < clearance
            && shorter_arc_direction(&layout.circle, positions[r], target, eps)
                .and_then(|d| Path::sec_arc(&layout.circle, positions[r], target, d).ok())
                .is_some_and(|own| arc_clear(&own, positions, r, clearance))
    });
    qualifying.min_by(|&a, &b| {
        let da = positions[a].distance(target);
        let db = positions[b].distance(target);
        da.partial_cmp(&db).expect("finite distances")
    })
}

enum PlanOutcome<S> {
    Go(Path<S>),
    WaitForCascade,
    Blocked,
}

fn plan_mover_path<S: Scalar>(
    mover: usize,
    target_idx: usize,
    positions: &[Point2<S>],
    roles: &[Role],
    layout: &TargetLayout<S>,
    tol: &Tolerances,
    tie: &mut TieBreaker,
) -> PlanOutcome<S> {
    let eps = tol.geom::<S>();
    let clearance = S::two() - eps;
    let target = layout.points[target_idx];
    let mp = positions[mover];

    if layout.circle.on_boundary(mp, eps) {
        let dir = match shorter_arc_direction(&layout.circle, mp, target, eps) {
            Some(d) => d,
            None => {
                // Antipodal target: the direction is a pure mirror choice.
                if tie.pick("arc-direction", 2) == 0 {
                    ArcDirection::Ccw
                } else {
                    ArcDirection::Cw
                }
            }
        };
        if let Ok(arc) = Path::sec_arc(&layout.circle, mp, target, dir) {
            if arc_clear(&arc, positions, mover, clearance) {
                return PlanOutcome::Go(arc);
            }
            if cascade_mover_for(mover, target_idx, positions, roles, layout, tol).is_some() {
                return PlanOutcome::WaitForCascade;
            }
        }
        // fall through: try the chord like an interior robot
    }

    if is_free_path_eps(mp, target, &discs_except(positions, mover), eps).unwrap_or(false) {
        if let Ok(seg) = Path::segment(mp, target) {
            return PlanOutcome::Go(seg);
        }
    }

    // Straight corridor blocked: slide around the first obstacle along it.
    let others: Vec<usize> = (0..positions.len()).filter(|&i| i != mover).collect();
    let obstacle = others
        .iter()
        .filter(|&&i| {
            crate::geometry::corridor_distance(mp, target, positions[i]) < S::one() - eps
        })
        .min_by(|&&a, &&b| {
            let axis = (target - mp).normalize();
            let ta = (positions[a] - mp).dot(axis);
            let tb = (positions[b] - mp).dot(axis);
            ta.partial_cmp(&tb).expect("finite distances")
        })
        .copied();

    if let Some(obstacle_idx) = obstacle {
        let mut options: Vec<Path<S>> = [ArcDirection::Ccw, ArcDirection::Cw]
            .into_iter()
            .filter_map(|side| plan_slide(mp, target, positions[obstacle_idx], S::two(), side))
            .filter(|p| arc_clear(p, positions, mover, clearance))
            .collect();
        if !options.is_empty() {
            options.sort_by(|a, b| {
                a.total_length()
                    .partial_cmp(&b.total_length())
                    .expect("finite lengths")
            });
            let len_tie = options.len() == 2
                && (options[0].total_length() - options[1].total_length()).abs() <= eps;
            let pick = if len_tie {
                let mid_y = |p: &Path<S>| {
                    p.pieces
                        .iter()
                        .find_map(|piece| match piece {
                            PathPiece::Arc { .. } => {
                                Some(piece.point_at_length(piece.length() * S::half()).y)
                            }
                            PathPiece::Line { .. } => None,
                        })
                        .unwrap_or(S::zero())
                };
                let (y0, y1) = (mid_y(&options[0]), mid_y(&options[1]));
                if (y0 - y1).abs() <= eps {
                    tie.pick("slide-side", 2) as usize
                } else if y0 > y1 {
                    0
                } else {
                    1
                }
            } else {
                0
            };
            return PlanOutcome::Go(options[pick].clone());
        }
    }
    PlanOutcome::Blocked
}

/// Decides the observer's move in the formation phase.
pub fn form_ucircle_decision<S: Scalar>(
    snapshot: &Snapshot<S>,
    layout: &TargetLayout<S>,
    tol: &Tolerances,
    tie: &mut TieBreaker,
) -> Result<Decision<S>, ComputeError> {
    let positions = &snapshot.positions;
    if layout.points.len() != positions.len() {
        return Err(ComputeError::InvalidLayout {
            targets: layout.points.len(),
            robots: positions.len(),
        });
    }
    let eps = tol.geom::<S>();
    let clearance = S::two() - eps;
    let me = snapshot.self_index;
    let my_pos = positions[me];
    let roles = classify(positions, layout, tol);
    let mut decision = Decision::stay(Phase::Formation);

    // A partial occupant commits to the target it already covers, and snaps
    // onto it as soon as the landing and corridor are clear.
    if let Role::Partial(k) = roles[me] {
        let t = layout.points[k];
        let landing_clear = positions
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != me)
            .all(|(_, &p)| p.distance(t) >= clearance);
        let corridor_free =
            is_free_path_eps(my_pos, t, &discs_except(positions, me), eps).unwrap_or(false);
        if landing_clear && corridor_free {
            decision.action = Action::Move {
                destination: t,
                path: Path::segment(my_pos, t)?,
            };
            decision.candidates = vec![t];
            decision.notes.push(DecisionNote::PartialSnap);
        } else {
            decision.notes.push(DecisionNote::PartialBlocked);
        }
        decision.tie_events = std::mem::take(&mut tie.events);
        return Ok(decision);
    }

    // Open targets, their designated movers, and vacancy as the mover sees
    // it (everyone else at least two units away).
    let occupied_or_claimed: Vec<bool> = {
        let mut v = vec![false; layout.points.len()];
        for r in &roles {
            match *r {
                Role::OnTarget(k) | Role::Partial(k) => v[k] = true,
                Role::Free => {}
            }
        }
        v
    };
    let serviceable: Vec<(usize, Vec<usize>)> = (0..layout.points.len())
        .filter(|&k| !occupied_or_claimed[k])
        .filter_map(|k| {
            let cands = candidates_for(layout.points[k], positions, &roles, eps);
            let vacant = cands.iter().any(|&c| {
                positions
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != c)
                    .all(|(_, &p)| p.distance(layout.points[k]) >= clearance)
            });
            (vacant && !cands.is_empty()).then_some((k, cands))
        })
        .collect();

    // Only the highest vacant target is serviced; an equal-height partner
    // (its mirror image) is serviced in the same round.
    let max_y = serviceable
        .iter()
        .map(|e| layout.points[e.0].y)
        .fold(S::neg_infinity(), S::max);
    let serviced: Vec<&(usize, Vec<usize>)> = serviceable
        .iter()
        .filter(|e| layout.points[e.0].y >= max_y - eps)
        .collect();

    match roles[me] {
        Role::OnTarget(_) => {
            // Re-designation: open the ring for a blocked rim mover.
            for &&(tk, ref cands) in &serviced {
                if cands.len() != 1 {
                    continue;
                }
                let m = cands[0];
                if cascade_mover_for(m, tk, positions, &roles, layout, tol) == Some(me) {
                    let dir = shorter_arc_direction(&layout.circle, my_pos, layout.points[tk], eps)
                        .expect("cascade movers have a strict shorter arc");
                    let arc = Path::sec_arc(&layout.circle, my_pos, layout.points[tk], dir)?;
                    decision.action = Action::Move {
                        destination: layout.points[tk],
                        path: arc,
                    };
                    decision.candidates = vec![layout.points[tk]];
                    decision.notes.push(DecisionNote::CascadeMove);
                    break;
                }
            }
        }
        Role::Free => {
            let mine: Vec<usize> = serviced
                .iter()
                .filter(|(_, cands)| cands.contains(&me))
                .map(|&&(k, _)| k)
                .collect();
            if !mine.is_empty() {
                decision.candidates = mine.iter().map(|&k| layout.points[k]).collect();
                let chosen = if mine.len() == 1 {
                    mine[0]
                } else {
                    // Nearest of the two mirror targets; an exact tie is the
                    // scheduler's seeded choice.
                    let d0 = my_pos.distance(layout.points[mine[0]]);
                    let d1 = my_pos.distance(layout.points[mine[1]]);
                    if (d0 - d1).abs() <= eps {
                        mine[tie.pick("mirror-target", 2) as usize]
                    } else if d0 < d1 {
                        mine[0]
                    } else {
                        mine[1]
                    }
                };
                match plan_mover_path(me, chosen, positions, &roles, layout, tol, tie) {
                    PlanOutcome::Go(path) => {
                        decision.action = Action::Move {
                            destination: layout.points[chosen],
                            path,
                        };
                    }
                    PlanOutcome::WaitForCascade => {
                        decision.notes.push(DecisionNote::CascadeWait);
                        decision.candidates.clear();
                    }
                    PlanOutcome::Blocked => {
                        decision.notes.push(DecisionNote::Blocked);
                        decision.candidates.clear();
                    }
                }
            }
        }
        Role::Partial(_) => unreachable!("handled above"),
    }

    decision.tie_events = std::mem::take(&mut tie.events);
    Ok(decision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::FormationSpec;
    use crate::geometry::PathKind;
    use crate::logic::compute_target_points;
    use approx::assert_abs_diff_eq;

    // n = 3 with target radius exactly 3 (side = 3 sqrt 3).
    fn spec3() -> FormationSpec<f64> {
        FormationSpec::new(3, 3.0 * 3.0_f64.sqrt()).unwrap()
    }

    fn spec4() -> FormationSpec<f64> {
        FormationSpec::new(4, 3.0).unwrap()
    }

    fn decide(
        positions: Vec<Point2<f64>>,
        me: usize,
        spec: FormationSpec<f64>,
        seed: u64,
    ) -> Decision<f64> {
        let tol = Tolerances::default();
        let sec = crate::geometry::smallest_enclosing_circle(&positions).unwrap();
        assert!(
            sec.radius >= spec.radius - 1e-9,
            "fixture not in formation phase: sec {} vs target {}",
            sec.radius,
            spec.radius
        );
        let layout = compute_target_points(&sec, &positions, positions.len(), &tol).unwrap();
        let snap = Snapshot {
            positions,
            self_index: me,
            spec,
        };
        let mut tie = TieBreaker::new(seed);
        form_ucircle_decision(&snap, &layout, &tol, &mut tie).unwrap()
    }

    fn polar(r: f64, deg: f64) -> Point2<f64> {
        Point2::from_polar(r, deg.to_radians())
    }

    #[test]
    fn on_target_robots_stay() {
        // Exact triangle on radius 3, anchored at the north point.
        let pts = vec![polar(3.0, 90.0), polar(3.0, 210.0), polar(3.0, 330.0)];
        for i in 0..3 {
            assert_eq!(decide(pts.clone(), i, spec3(), 0).action, Action::Stay);
        }
    }

    #[test]
    fn partial_occupant_snaps_onto_covered_target() {
        // Antipodal rim pair at 30/210 pins the circle; targets fall at
        // 30/150/270 and the third robot covers the 150-degree target.
        let t150 = polar(3.0, 150.0);
        let partial = t150 + Point2::new(0.6, -0.5);
        let pts = vec![polar(3.0, 210.0), polar(3.0, 30.0), partial];
        let dec = decide(pts, 2, spec3(), 0);
        let Action::Move { destination, path } = dec.action else {
            panic!("partial occupant should snap onto its target");
        };
        assert_abs_diff_eq!(destination.distance(t150), 0.0, epsilon = 1e-9);
        assert_eq!(path.kind, PathKind::Segment);
        assert!(dec.notes.contains(&DecisionNote::PartialSnap));
    }

    #[test]
    fn rim_mover_slides_to_highest_vacant_target() {
        // Robots on the 90- and 210-degree targets; the third sits on the
        // rim at 270 and must take the short arc to the 330-degree target.
        let pts = vec![polar(3.0, 90.0), polar(3.0, 210.0), polar(3.0, 270.0)];
        let dec = decide(pts.clone(), 2, spec3(), 0);
        let Action::Move { destination, path } = dec.action else {
            panic!("rim mover must act");
        };
        assert_abs_diff_eq!(destination.distance(polar(3.0, 330.0)), 0.0, epsilon = 1e-9);
        assert_eq!(path.kind, PathKind::SecArc);
        assert!(path.total_length() < 3.2); // 60-degree arc, not the long way
        assert_eq!(decide(pts.clone(), 0, spec3(), 0).action, Action::Stay);
        assert_eq!(decide(pts, 1, spec3(), 0).action, Action::Stay);
    }

    #[test]
    fn cascade_reassigns_blocking_target_sitter() {
        // Square targets at 45/135/225/315 on radius 3. Robots hold 135,
        // 225 and 315; the free robot at 275 degrees is nearest to the open
        // 45-degree target but its short arc runs through the robot on 315.
        // That robot has a clear arc onward, so it moves and the rim opens.
        let pts = vec![
            polar(3.0, 135.0),
            polar(3.0, 225.0),
            polar(3.0, 315.0),
            polar(3.0, 275.0),
        ];
        let t45 = polar(3.0, 45.0);

        // The blocked mover waits for the cascade.
        let mover = decide(pts.clone(), 3, spec4(), 0);
        assert_eq!(mover.action, Action::Stay);
        assert!(mover.notes.contains(&DecisionNote::CascadeWait));

        // The sitter on 315 is re-designated and slides on to 45.
        let sitter = decide(pts.clone(), 2, spec4(), 0);
        let Action::Move { destination, path } = sitter.action else {
            panic!("cascade mover must act");
        };
        assert_abs_diff_eq!(destination.distance(t45), 0.0, epsilon = 1e-9);
        assert_eq!(path.kind, PathKind::SecArc);
        assert!(sitter.notes.contains(&DecisionNote::CascadeMove));

        // Uninvolved target sitters stay.
        assert_eq!(decide(pts.clone(), 0, spec4(), 0).action, Action::Stay);
        assert_eq!(decide(pts, 1, spec4(), 0).action, Action::Stay);
    }

    #[test]
    fn layout_mismatch_is_rejected() {
        let pts = vec![polar(3.0, 90.0), polar(3.0, 210.0), polar(3.0, 330.0)];
        let tol = Tolerances::default();
        let sec = crate::geometry::smallest_enclosing_circle(&pts).unwrap();
        let layout = compute_target_points(&sec, &pts, 4, &tol).unwrap();
        let snap = Snapshot {
            positions: pts,
            self_index: 0,
            spec: spec3(),
        };
        let mut tie = TieBreaker::new(0);
        assert!(matches!(
            form_ucircle_decision(&snap, &layout, &tol, &mut tie),
            Err(ComputeError::InvalidLayout { .. })
        ));
    }
}
