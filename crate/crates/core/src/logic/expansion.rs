//! Expansion of the smallest enclosing circle.
//!
//! While the current circle is too small, the elected leader steps outward.
//! With a robot on the antipodal rim point the leader moves radially by
//! `2 (r - r_c)`, which stretches that diameter to exactly `2 r`. Otherwise
//! the leader heads for the landing point at distance `2 r` from the rim
//! robot farthest from it; if its corridor is blocked, the robot nearest to
//! the landing point with a free corridor goes instead. Either way a single
//! completed move makes the new enclosing circle at least as large as the
//! target circle.

use super::{
    Action, ComputeError, Decision, DecisionNote, ExpansionBranch, ExpansionMeta, Phase, Snapshot,
    SymmetryReport, TieBreaker, Tolerances,
};
use crate::geometry::{is_free_path_eps, Circle, Disc, Path, Point2};
use crate::Scalar;

struct Task<S> {
    branch: ExpansionBranch,
    mover: Option<usize>,
    destination: Point2<S>,
    anchor: Point2<S>,
    /// The leader whose election created this task (stays put when the task
    /// is delegated).
    leader: usize,
}

fn unit_discs_except<S: Scalar>(positions: &[Point2<S>], skip: usize) -> Vec<Disc<S>> {
    positions
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &p)| Disc::unit(p))
        .collect()
}

fn leader_task<S: Scalar>(
    positions: &[Point2<S>],
    sec: &Circle<S>,
    leader: usize,
    spec_radius: S,
    tol: &Tolerances,
) -> Option<Task<S>> {
    let eps = tol.geom::<S>();
    let snap = tol.snap::<S>();
    let lp = positions[leader];
    let ray = (lp - sec.center).try_normalize()?;
    let antipode = sec.center - ray * sec.radius;

    if let Some(occupant) = positions
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != leader)
        .find(|&(_, p)| p.distance(antipode) <= snap)
    {
        let step = S::two() * (spec_radius - sec.radius);
        return Some(Task {
            branch: ExpansionBranch::Radial,
            mover: Some(leader),
            destination: lp + ray * step,
            anchor: *occupant.1,
            leader,
        });
    }

    // Rim robots anchor the landing point on the far side of the circle,
    // tried farthest-from-the-leader first (ties to the higher one). Any rim
    // anchor works: the landing sits at distance 2r from it and every robot
    // stays within r of their midpoint, so the new enclosing circle has
    // radius exactly r.
    let mut anchors: Vec<usize> = (0..positions.len())
        .filter(|&i| i != leader && sec.on_boundary(positions[i], eps))
        .collect();
    anchors.sort_by(|&a, &b| {
        let da = positions[a].distance(lp);
        let db = positions[b].distance(lp);
        db.partial_cmp(&da)
            .expect("finite distances")
            .then_with(|| {
                positions[b]
                    .y
                    .partial_cmp(&positions[a].y)
                    .expect("finite coordinates")
            })
    });
    let first_anchor = *anchors.first()?;

    for &far in &anchors {
        let fp = positions[far];
        let Some(inward) = (sec.center - fp).try_normalize() else {
            continue;
        };
        let landing = fp + inward * (S::two() * spec_radius);
        // The corridor predicate does not cover the landing disc itself, so
        // a mover also requires the landing to be vacant around it.
        let landing_vacant_for = |mover: usize| {
            positions
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != mover)
                .all(|(_, &p)| p.distance(landing) >= S::two() - eps)
        };

        if landing_vacant_for(leader)
            && is_free_path_eps(lp, landing, &unit_discs_except(positions, leader), eps)
                .unwrap_or(false)
        {
            return Some(Task {
                branch: ExpansionBranch::Landing,
                mover: Some(leader),
                destination: landing,
                anchor: fp,
                leader,
            });
        }

        // Delegate: nearest robot with a free corridor and a clear landing.
        let delegate = positions
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != leader && i != far)
            .filter(|&(i, &p)| {
                landing_vacant_for(i)
                    && is_free_path_eps(p, landing, &unit_discs_except(positions, i), eps)
                        .unwrap_or(false)
            })
            .min_by(|a, b| {
                let da = a.1.distance(landing);
                let db = b.1.distance(landing);
                da.partial_cmp(&db)
                    .expect("finite distances")
                    // nearer wins; on a distance tie the higher robot goes
                    .then_with(|| b.1.y.partial_cmp(&a.1.y).expect("finite coordinates"))
            })
            .map(|(i, _)| i);
        if delegate.is_some() {
            return Some(Task {
                branch: ExpansionBranch::Delegated,
                mover: delegate,
                destination: landing,
                anchor: fp,
                leader,
            });
        }
    }

    // Every candidate landing is unusable (in packed configurations the
    // landing point itself can sit within two units of bystanders). Fall
    // back to a plain outward step by the leader: moving radially away from
    // the circle center never reduces its distance to anyone inside the
    // circle, so it is unconditionally collision-free. Taken only when it
    // grows the enclosing circle, which the leader can verify from the
    // snapshot alone.
    let step = S::two() * (spec_radius - sec.radius);
    let fallback_dest = lp + ray * step;
    let mut post = positions.to_vec();
    post[leader] = fallback_dest;
    if let Ok(new_sec) = crate::geometry::smallest_enclosing_circle(&post) {
        if new_sec.radius >= sec.radius - S::from_f64_lossy(1e-12) {
            return Some(Task {
                branch: ExpansionBranch::RadialFallback,
                mover: Some(leader),
                destination: fallback_dest,
                anchor: positions[first_anchor],
                leader,
            });
        }
    }

    // The fallback would shrink the circle; record the block and wait.
    let fp = positions[first_anchor];
    let inward = (sec.center - fp).try_normalize()?;
    Some(Task {
        branch: ExpansionBranch::Delegated,
        mover: None,
        destination: fp + inward * (S::two() * spec_radius),
        anchor: fp,
        leader,
    })
}

/// Decides the observer's move while the enclosing circle is still too
/// small. Robots that are neither elected nor delegated stay put.
pub fn sec_expansion_decision<S: Scalar>(
    snapshot: &Snapshot<S>,
    sec: &Circle<S>,
    report: &SymmetryReport<S>,
    tol: &Tolerances,
    tie: &mut TieBreaker,
) -> Result<Decision<S>, ComputeError> {
    let spec_radius = snapshot.spec.radius;
    if !tol.is_expansion_phase(sec.radius, spec_radius) {
        return Err(ComputeError::PhaseMismatch(format!(
            "expansion called with enclosing radius {} within reach of target {}",
            sec.radius, spec_radius
        )));
    }

    let positions = &snapshot.positions;
    let me = snapshot.self_index;
    let tasks: Vec<Task<S>> = report
        .leaders
        .iter()
        .filter_map(|&l| leader_task(positions, sec, l, spec_radius, tol))
        .collect();

    let mut decision = Decision::stay(Phase::Expansion);
    if report.rule == super::LeaderRule::Fallback {
        decision.notes.push(DecisionNote::LeaderFallback);
    }

    let mine: Vec<&Task<S>> = tasks.iter().filter(|t| t.mover == Some(me)).collect();
    let chosen = match mine.len() {
        0 => {
            // A leader whose task got delegated away records the block.
            if tasks
                .iter()
                .any(|t| t.leader == me && t.branch == ExpansionBranch::Delegated)
            {
                decision.notes.push(DecisionNote::Blocked);
            }
            None
        }
        1 => Some(mine[0]),
        _ => {
            // Delegated to both mirror landing points at once; the seeded
            // choice models "move to any of them".
            let k = tie.pick("expansion-dual-delegate", mine.len() as u32) as usize;
            decision.candidates = mine.iter().map(|t| t.destination).collect();
            Some(mine[k])
        }
    };

    if let Some(task) = chosen {
        let path = Path::segment(positions[me], task.destination)?;
        if decision.candidates.is_empty() {
            decision.candidates = vec![task.destination];
        }
        decision.action = Action::Move {
            destination: task.destination,
            path,
        };
        decision.expansion = Some(ExpansionMeta {
            branch: task.branch,
            anchor: task.anchor,
        });
    }
    decision.tie_events = std::mem::take(&mut tie.events);
    Ok(decision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::FormationSpec;
    use crate::logic::detect_symmetry_and_leaders;
    use approx::assert_abs_diff_eq;

    fn on_circle(angles_deg: &[f64], r: f64) -> Vec<Point2<f64>> {
        angles_deg
            .iter()
            .map(|a| Point2::from_polar(r, a.to_radians()))
            .collect()
    }

    // Three robots with a target radius of 3: side = 3 * sqrt(3) gives
    // r = side / (2 sin(pi/3)) = 3 exactly.
    fn spec_r3() -> FormationSpec<f64> {
        FormationSpec::new(3, 3.0 * 3.0_f64.sqrt()).unwrap()
    }

    fn decide(
        positions: Vec<Point2<f64>>,
        self_index: usize,
    ) -> (Decision<f64>, Circle<f64>) {
        let spec = spec_r3();
        let snap = Snapshot {
            positions,
            self_index,
            spec,
        };
        let tol = Tolerances::default();
        let sec = crate::geometry::smallest_enclosing_circle(&snap.positions).unwrap();
        let report = detect_symmetry_and_leaders(&snap.positions, &sec, &tol);
        let mut tie = TieBreaker::new(7);
        (
            sec_expansion_decision(&snap, &sec, &report, &tol, &mut tie).unwrap(),
            sec,
        )
    }

    #[test]
    fn radial_step_with_antipodal_robot() {
        // Leader at 45 degrees, occupied antipode at 225: radial step by 2
        // lands at (2 sqrt 2, 2 sqrt 2).
        let pts = on_circle(&[45.0, 190.0, 225.0], 2.0);
        let (dec, _) = decide(pts, 0);
        let Action::Move { destination, .. } = dec.action else {
            panic!("leader must move");
        };
        assert_abs_diff_eq!(destination.x, 2.8284271247461903, epsilon = 1e-9);
        assert_abs_diff_eq!(destination.y, 2.8284271247461903, epsilon = 1e-9);
        assert_eq!(dec.expansion.unwrap().branch, ExpansionBranch::Radial);
    }

    #[test]
    fn non_leader_stays_in_radial_case() {
        let pts = on_circle(&[45.0, 190.0, 225.0], 2.0);
        for i in [1, 2] {
            let (dec, _) = decide(pts.clone(), i);
            assert_eq!(dec.action, Action::Stay);
        }
    }

    #[test]
    fn landing_move_with_vacant_antipode() {
        // Antipode of the leader is empty; the farthest rim robot sits at
        // 190 degrees and the landing point lies 6 units from it.
        let pts = on_circle(&[45.0, 190.0, 315.0], 2.0);
        let (dec, _) = decide(pts.clone(), 0);
        let Action::Move { destination, .. } = dec.action else {
            panic!("leader must move");
        };
        assert_abs_diff_eq!(destination.x, 3.9392310120488316, epsilon = 1e-6);
        assert_abs_diff_eq!(destination.y, 0.6945927106677233, epsilon = 1e-6);
        let meta = dec.expansion.unwrap();
        assert_eq!(meta.branch, ExpansionBranch::Landing);
        assert_abs_diff_eq!(meta.anchor.distance(pts[1]), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn blocked_leader_delegates_to_nearest_free_robot() {
        // Rim robots at (2,0), (0,2), (0,-2). The leader (2,0) is the only
        // off-axis rim robot; its farthest rim peer ties and resolves to
        // (0,2) by height, putting the landing point at (0,-4). The south
        // robot straddles that corridor, so it is delegated there itself.
        let pts = vec![
            Point2::new(2.0, 0.0),
            Point2::new(0.0, 2.0),
            Point2::new(0.0, -2.0),
        ];
        let landing = Point2::new(0.0, -4.0);

        let (leader_dec, _) = decide(pts.clone(), 0);
        assert_eq!(leader_dec.action, Action::Stay);
        assert!(leader_dec.notes.contains(&DecisionNote::Blocked));

        let (south_dec, _) = decide(pts.clone(), 2);
        let Action::Move { destination, .. } = south_dec.action else {
            panic!("delegate must move");
        };
        assert_eq!(
            south_dec.expansion.unwrap().branch,
            ExpansionBranch::Delegated
        );
        assert_abs_diff_eq!(destination.distance(landing), 0.0, epsilon = 1e-9);

        let (north_dec, _) = decide(pts, 1);
        assert_eq!(north_dec.action, Action::Stay);
    }

    #[test]
    fn phase_mismatch_is_rejected() {
        let spec = FormationSpec::new(3, 3.0).unwrap(); // r ~ 1.73 < 2
        let pts = on_circle(&[45.0, 190.0, 225.0], 2.0);
        let snap = Snapshot {
            positions: pts.clone(),
            self_index: 0,
            spec,
        };
        let tol = Tolerances::default();
        let sec = crate::geometry::smallest_enclosing_circle(&pts).unwrap();
        let report = detect_symmetry_and_leaders(&pts, &sec, &tol);
        let mut tie = TieBreaker::new(0);
        assert!(matches!(
            sec_expansion_decision(&snap, &sec, &report, &tol, &mut tie),
            Err(ComputeError::PhaseMismatch(_))
        ));
    }
}
