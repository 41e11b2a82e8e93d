//! Property-based invariants over the geometric primitives and the
//! decision-layer constructions.

use proptest::prelude::*;

use ucircle::geometry::{
    chord_for_angle, formation_radius, is_free_path, is_vacant, plan_slide,
    sec_bruteforce_oracle, smallest_enclosing_circle, ArcDirection, Circle, Disc, Path, PathKind,
    PathPiece, Point2,
};
use ucircle::logic::{compute_target_points, LocalFrame, Tolerances};

type P = Point2<f64>;

fn pt(range: f64) -> impl Strategy<Value = P> {
    (-range..range, -range..range).prop_map(|(x, y)| Point2::new(x, y))
}

fn discs(count: std::ops::Range<usize>, range: f64) -> impl Strategy<Value = Vec<Disc<f64>>> {
    prop::collection::vec(pt(range).prop_map(Disc::unit), count)
}

proptest! {
    /// The chord spanned by the target spacing angle on the formation
    /// circle is exactly the requested side length.
    #[test]
    fn formation_radius_chord_roundtrip(n in 3usize..64, side in 3.0f64..100.0) {
        let r = formation_radius(n, side).unwrap();
        let chord = chord_for_angle(r, std::f64::consts::TAU / n as f64).unwrap();
        prop_assert!((chord - side).abs() < 1e-9, "chord {chord} vs side {side}");
    }

    /// The incremental enclosing circle matches the exhaustive oracle.
    #[test]
    fn sec_matches_oracle(points in prop::collection::vec(pt(10.0), 1..12)) {
        let fast = smallest_enclosing_circle(&points).unwrap();
        let oracle = sec_bruteforce_oracle(&points).unwrap();
        prop_assert!((fast.radius - oracle.radius).abs() <= 1e-9);
        prop_assert!(fast.center.distance(oracle.center) <= 1e-9);
    }

    /// Every input point is enclosed.
    #[test]
    fn sec_encloses_all(points in prop::collection::vec(pt(10.0), 1..12)) {
        let c = smallest_enclosing_circle(&points).unwrap();
        for p in &points {
            prop_assert!(c.center.distance(*p) <= c.radius + 1e-9);
        }
    }

    /// Removing an obstacle can only make a corridor freer.
    #[test]
    fn free_path_monotone_under_removal(
        source in pt(10.0),
        dest in pt(10.0),
        obstacles in discs(1..6, 12.0),
        drop in 0usize..6,
    ) {
        prop_assume!(source.distance(dest) > 1e-6);
        let before = is_free_path(source, dest, &obstacles).unwrap();
        let mut fewer = obstacles.clone();
        fewer.remove(drop % fewer.len());
        let after = is_free_path(source, dest, &fewer).unwrap();
        prop_assert!(!before || after, "removal flipped free -> blocked");
    }

    /// Vacancy is exactly the distance-two characterization.
    #[test]
    fn vacancy_is_distance_two(point in pt(6.0), obstacles in discs(0..6, 8.0)) {
        let got = is_vacant(point, &obstacles);
        let expected = obstacles.iter().all(|d| point.distance(d.center) >= 2.0);
        prop_assert_eq!(got, expected);
    }

    /// Arc-length parameterization is 1-Lipschitz against the path length.
    #[test]
    fn path_parameterization_is_lipschitz(
        a in pt(8.0),
        b in pt(8.0),
        center in pt(4.0),
        radius in 0.5f64..6.0,
        start in 0.0f64..6.28,
        sweep in -6.0f64..6.0,
        t1 in 0.0f64..1.0,
        t2 in 0.0f64..1.0,
    ) {
        prop_assume!(a.distance(b) > 1e-6);
        prop_assume!(sweep.abs() > 1e-3);
        for path in [
            Path::segment(a, b).unwrap(),
            Path::new(
                PathKind::SecArc,
                vec![PathPiece::Arc { center, radius, start_angle: start, sweep }],
            )
            .unwrap(),
        ] {
            let len = path.total_length();
            let p1 = path.point_at(t1).unwrap();
            let p2 = path.point_at(t2).unwrap();
            prop_assert!(p1.distance(p2) <= (t1 - t2).abs() * len + 1e-9);
        }
    }

    /// Local frames round-trip and preserve the shared vertical order.
    #[test]
    fn local_frame_roundtrip(
        origin in pt(10.0),
        handedness in prop::bool::ANY,
        points in prop::collection::vec(pt(20.0), 1..10),
    ) {
        let frame = LocalFrame::new(if handedness { 1 } else { -1 }, origin);
        for &p in &points {
            let back = frame.to_global(frame.to_local(p));
            prop_assert!(back.distance(p) <= 1e-12);
        }
        for w in points.windows(2) {
            let order = w[0].y < w[1].y;
            let local_order = frame.to_local(w[0]).y < frame.to_local(w[1]).y;
            prop_assert_eq!(order, local_order);
        }
    }

    /// Target layouts: uniform gaps, spacing at least the side length, and
    /// no unit disc can cover two targets at once.
    #[test]
    fn layout_invariants(
        n in 3usize..12,
        cx in -5.0f64..5.0,
        cy in -5.0f64..5.0,
        extra in 0.0f64..4.0,
        anchor in prop::bool::ANY,
    ) {
        let side = 3.0;
        let r = formation_radius(n, side).unwrap();
        let circle = Circle::new(Point2::new(cx, cy), r + extra);
        let tol = Tolerances::default();
        // Optionally park a robot on the north point to flip the layout case.
        let positions = if anchor { vec![circle.north_point()] } else { vec![] };
        let layout = compute_target_points(&circle, &positions, n, &tol).unwrap();

        prop_assert_eq!(layout.points.len(), n);
        prop_assert_eq!(layout.anchored, anchor);
        let step = std::f64::consts::TAU / n as f64;
        for i in 0..n {
            let gap = ucircle::geometry::ccw_delta(
                layout.angles[i],
                layout.angles[(i + 1) % n],
            );
            prop_assert!((gap - step).abs() < 1e-9);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let d = layout.points[i].distance(layout.points[j]);
                prop_assert!(d >= side - 1e-9, "targets {i},{j} only {d} apart");
                // a unit disc cannot strictly contain two targets
                prop_assert!(d > 2.0);
            }
        }
    }

    /// Slides connect their endpoints and keep sliding contact: never closer
    /// than the clearance to the obstacle they wrap.
    #[test]
    fn slide_paths_respect_clearance(
        from_angle in 0.0f64..6.28,
        from_dist in 2.0f64..8.0,
        to_angle in 0.0f64..6.28,
        to_dist in 2.0f64..8.0,
        obstacle in pt(3.0),
        side in prop::bool::ANY,
    ) {
        let from = obstacle + Point2::from_polar(from_dist, from_angle);
        let to = obstacle + Point2::from_polar(to_dist, to_angle);
        prop_assume!(from.distance(to) > 1e-6);
        let dir = if side { ArcDirection::Ccw } else { ArcDirection::Cw };
        let Some(path) = plan_slide(from, to, obstacle, 2.0, dir) else {
            return Err(TestCaseError::fail("slide must exist for exterior endpoints"));
        };
        prop_assert!(path.start().distance(from) <= 1e-9);
        prop_assert!(path.end().distance(to) <= 1e-9);
        for k in 0..=200 {
            let q = path.point_at(k as f64 / 200.0).unwrap();
            prop_assert!(q.distance(obstacle) >= 2.0 - 1e-9);
        }
    }
}

/// Sampling stability: the collision check's verdict does not depend on the
/// sampling density for traces the simulator produces.
#[test]
fn collision_check_sampling_stability() {
    use ucircle::checker::check_motion_collision_free;
    use ucircle::sim::{random_initial, run, ActivationPolicy, RunParams};

    for (n, seed) in [(3usize, 11u64), (5, 12), (8, 13)] {
        let world = random_initial::<f64>(n, 3.0, seed, 12.0).unwrap();
        let params = RunParams::new(ActivationPolicy::all(), 200 * n as u64, seed);
        let trace = run(world, &params).unwrap();
        for rec in &trace.records {
            let coarse = check_motion_collision_free(rec, 1000);
            let fine = check_motion_collision_free(rec, 10000);
            assert_eq!(
                coarse.pass, fine.pass,
                "sampling density changed the verdict in round {}",
                rec.round
            );
        }
    }
}
