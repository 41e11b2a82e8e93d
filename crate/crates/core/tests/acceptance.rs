//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `--nocapture`) and failing loudly otherwise.
//!
//! Criteria:
//! 1. formation radius fixtures against frozen high-precision values
//! 2. enclosing-circle equivalence with the exhaustive oracle, 1000 sets
//! 3. corridor and vacancy predicates against independent oracles
//! 4. hand-derived expansion fixture (radial step exactness)
//! 5. end-to-end: 600 seeded runs form without collision under every policy
//! 6. chirality invariance of the compute phase
//! 7. byte-identical replays and trace round-trips

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ucircle::checker::{check_progress, check_sec_monotone, replay_trace};
use ucircle::geometry::{
    formation_radius, is_free_path, is_vacant,
    sec_bruteforce_oracle, smallest_enclosing_circle, Disc, FormationSpec, Point2,
};
use ucircle::logic::{
    compute, detect_symmetry_and_leaders, sec_expansion_decision, Action, LocalFrame, Snapshot,
    TieBreaker, Tolerances,
};
use ucircle::sim::{random_initial, run, ActivationPolicy, Outcome, RunParams, Trace};

type P = Point2<f64>;

fn pass(criterion: u32, what: &str) {
    println!("ACCEPTANCE {criterion}: PASS - {what}");
}

#[test]
fn criterion_1_formation_radius_fixtures() {
    // sin(pi/6) = 1/2 exactly, so (6, 3) -> 3 to machine precision.
    let r6 = formation_radius(6, 3.0_f64).unwrap();
    assert!((r6 - 3.0).abs() < 1e-12, "r(6,3) = {r6}");
    // Frozen oracle values: 3/sqrt(2) and sqrt(3).
    let r4 = formation_radius(4, 3.0_f64).unwrap();
    assert!((r4 - 2.1213203435596424).abs() < 1e-9, "r(4,3) = {r4}");
    let r3 = formation_radius(3, 3.0_f64).unwrap();
    assert!((r3 - 1.7320508075688772).abs() < 1e-9, "r(3,3) = {r3}");
    pass(1, "formation radius fixtures within tolerance");
}

#[test]
fn criterion_2_sec_matches_bruteforce_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EC0_0C1E);
    for case in 0..1000 {
        let n = rng.gen_range(3..=12);
        let pts: Vec<P> = (0..n)
            .map(|_| Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
            .collect();
        let fast = smallest_enclosing_circle(&pts).unwrap();
        let oracle = sec_bruteforce_oracle(&pts).unwrap();
        let dr = (fast.radius - oracle.radius).abs();
        let dc = fast.center.distance(oracle.center);
        assert!(
            dr <= 1e-9 && dc <= 1e-9,
            "case {case}: radius diff {dr:.3e}, center diff {dc:.3e} on {pts:?}"
        );
    }
    pass(2, "1000 random point sets agree with the exhaustive oracle");
}

/// Independent corridor oracle: corner-based point-to-rectangle distance
/// (inside test plus minimum over the four edges).
fn rect_distance_oracle(source: P, dest: P, p: P) -> f64 {
    let axis = dest - source;
    let len = axis.norm();
    let dir = axis / len;
    let perp = dir.perp();
    let corners = [
        source + perp,
        source - perp,
        dest - perp,
        dest + perp,
    ];
    let rel = p - source;
    let along = rel.dot(dir);
    let across = rel.dot(perp);
    if along >= 0.0 && along <= len && across.abs() <= 1.0 {
        return 0.0;
    }
    let edge = |a: P, b: P| ucircle::geometry::point_segment_distance(p, a, b);
    edge(corners[0], corners[3])
        .min(edge(corners[1], corners[2]))
        .min(edge(corners[0], corners[1]))
        .min(edge(corners[3], corners[2]))
}

#[test]
fn criterion_3_predicate_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF8EE_4A7B);
    let mut boundary_skips = 0;
    for case in 0..1000 {
        let source = Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let mut dest = Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        if source.distance(dest) < 0.1 {
            dest = dest + Point2::new(1.0, 0.0);
        }
        let discs: Vec<Disc<f64>> = (0..rng.gen_range(1..=4))
            .map(|_| {
                Disc::unit(Point2::new(
                    rng.gen_range(-12.0..12.0),
                    rng.gen_range(-12.0..12.0),
                ))
            })
            .collect();
        let got = is_free_path(source, dest, &discs).unwrap();
        let oracle_free = discs
            .iter()
            .all(|d| rect_distance_oracle(source, dest, d.center) >= 1.0);
        let near_boundary = discs
            .iter()
            .any(|d| (rect_distance_oracle(source, dest, d.center) - 1.0).abs() < 1e-7);
        if near_boundary {
            boundary_skips += 1;
            continue;
        }
        assert_eq!(got, oracle_free, "case {case}: {source:?} -> {dest:?} vs {discs:?}");
    }
    assert!(boundary_skips < 20, "oracle boundary coincidences should be rare");

    let mut rng = ChaCha8Rng::seed_from_u64(0x7AC4);
    for case in 0..1000 {
        let p = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let discs: Vec<Disc<f64>> = (0..rng.gen_range(1..=5))
            .map(|_| {
                Disc::unit(Point2::new(
                    rng.gen_range(-7.0..7.0),
                    rng.gen_range(-7.0..7.0),
                ))
            })
            .collect();
        let got = is_vacant(p, &discs);
        let oracle = discs.iter().all(|d| p.distance(d.center) >= 2.0);
        assert_eq!(got, oracle, "case {case}");
    }
    pass(3, "corridor and vacancy predicates match their oracles");
}

#[test]
fn criterion_4_expansion_fixture() {
    // Literal fixture: robots at 45/190/225 degrees on a radius-2 circle
    // with target radius 3. (The 190/225 pair is closer than two robot
    // widths, so this exercises the decision rule directly rather than the
    // overlap-validating engine.)
    let spec = FormationSpec::new(3, 3.0 * 3.0_f64.sqrt()).unwrap();
    assert!((spec.radius - 3.0).abs() < 1e-12);
    let pts: Vec<P> = [45.0_f64, 190.0, 225.0]
        .iter()
        .map(|a| Point2::from_polar(2.0, a.to_radians()))
        .collect();
    let tol = Tolerances::default();
    let sec = smallest_enclosing_circle(&pts).unwrap();
    assert!((sec.radius - 2.0).abs() < 1e-12);
    let report = detect_symmetry_and_leaders(&pts, &sec, &tol);
    let snapshot = Snapshot {
        positions: pts.clone(),
        self_index: 0,
        spec,
    };
    let mut tie = TieBreaker::new(0);
    let dec = sec_expansion_decision(&snapshot, &sec, &report, &tol, &mut tie).unwrap();
    let Action::Move { destination, .. } = dec.action else {
        panic!("leader must move radially");
    };
    let expect = 2.0 * std::f64::consts::SQRT_2;
    assert!((destination.x - expect).abs() < 1e-9, "{destination:?}");
    assert!((destination.y - expect).abs() < 1e-9, "{destination:?}");

    let mut post = pts;
    post[0] = destination;
    let new_sec = smallest_enclosing_circle(&post).unwrap();
    assert!(
        (new_sec.radius - 3.0).abs() < 1e-9,
        "post radius {}",
        new_sec.radius
    );
    pass(4, "radial expansion lands at (2*sqrt2, 2*sqrt2) and the circle hits radius 3");
}

fn box_side_for(n: usize, seed_index: u64) -> f64 {
    let r = formation_radius(n, 3.0_f64).unwrap();
    if seed_index % 2 == 0 {
        2.0 * r + 2.0
    } else {
        // tight boxes start some runs below the target radius
        (2.8 * (n as f64).sqrt()).max(4.4)
    }
}

fn policies(master: u64) -> Vec<(&'static str, ActivationPolicy)> {
    vec![
        ("all", ActivationPolicy::all()),
        ("random-subset", ActivationPolicy::random_subset(master)),
        ("round-robin", ActivationPolicy::round_robin()),
    ]
}

fn matrix_world(n: usize, seed_index: u64, master: u64) -> ucircle::sim::WorldState<f64> {
    if seed_index % 5 == 3 {
        // guaranteed expansion starts, alternating exact and broken symmetry
        packed_expansion_world(n, master, seed_index % 2 == 0)
    } else {
        random_initial::<f64>(n, 3.0, master, box_side_for(n, seed_index))
            .or_else(|_| {
                // over-tight packings occasionally defeat rejection sampling
                random_initial::<f64>(n, 3.0, master, box_side_for(n, 0))
            })
            .expect("placement succeeds")
    }
}

fn matrix_run(n: usize, seed_index: u64, policy: &ActivationPolicy, master: u64) -> Trace<f64> {
    let world = matrix_world(n, seed_index, master);
    let params = RunParams::new(policy.clone(), 200 * n as u64, master);
    run(world, &params).expect("run executes")
}

#[test]
fn criterion_5_end_to_end_theorem() {
    let mut failures: Vec<String> = Vec::new();
    let mut total = 0;
    let mut expansion_runs = 0;
    for n in 3..=10 {
        for seed_index in 0..25u64 {
            let master = n as u64 * 1000 + seed_index;
            for (pname, policy) in policies(master) {
                total += 1;
                let trace = matrix_run(n, seed_index, &policy, master);
                let label = format!("n={n} seed={seed_index} policy={pname}");
                if trace.outcome != Outcome::Formed {
                    failures.push(format!("{label}: outcome {:?}", trace.outcome));
                    continue;
                }
                for rec in &trace.records {
                    for check in &rec.checks {
                        if !check.pass {
                            failures.push(format!(
                                "{label}: round {} {} failed: {}",
                                rec.round, check.name, check.detail
                            ));
                        }
                    }
                }
                let monotone = check_sec_monotone(&trace);
                if !monotone.pass {
                    failures.push(format!("{label}: sec-monotone: {}", monotone.detail));
                }
                let progress = check_progress(&trace, 5 * n);
                if !progress.pass {
                    failures.push(format!("{label}: progress: {}", progress.detail));
                }
                for check in &trace.final_checks {
                    if !check.pass {
                        failures.push(format!("{label}: {}: {}", check.name, check.detail));
                    }
                }
                if trace
                    .records
                    .iter()
                    .any(|r| r.decisions.iter().any(|d| d.expansion.is_some()))
                {
                    expansion_runs += 1;
                }
            }
        }
    }
    assert!(
        failures.is_empty(),
        "{} of {total} runs failed:\n{}",
        failures.len(),
        failures.join("\n")
    );
    assert!(
        expansion_runs > 0,
        "the matrix should exercise the expansion phase"
    );
    pass(
        5,
        &format!("{total} runs formed without collision ({expansion_runs} exercised expansion)"),
    );
}

/// A regular polygon packed below the expansion threshold: every robot on a
/// circle too small for the formation, pairwise separation just over 2.
/// `jitter` perturbs the radii slightly to break the mirror symmetry.
fn packed_expansion_world(n: usize, seed: u64, jitter: bool) -> ucircle::sim::WorldState<f64> {
    let spec = FormationSpec::new(n, 3.0_f64).unwrap();
    let tol = Tolerances::default();
    let s = (std::f64::consts::PI / n as f64).sin();
    let lower = 1.003 / s;
    let upper = spec.radius - tol.phase_slack - 0.01;
    assert!(lower < upper, "packed polygon infeasible for n = {n}");
    let rho = 0.5 * (lower + upper);
    let rot = 0.7548776662466927 * seed as f64; // irrational turn per seed
    let robots = (0..n)
        .map(|k| {
            let dr = if jitter {
                0.002 * (((seed as usize + k) % 5) as f64 - 2.0) / 2.0
            } else {
                0.0
            };
            ucircle::sim::RobotState {
                id: k,
                center: Point2::from_polar(
                    rho + dr,
                    rot + std::f64::consts::TAU * k as f64 / n as f64,
                ),
                handedness: if (seed + k as u64) % 2 == 0 { 1 } else { -1 },
            }
        })
        .collect();
    ucircle::sim::WorldState::new(spec, robots)
}

#[test]
fn criterion_6_chirality_invariance() {
    let mut checked = 0;
    let mut phases = [0usize; 2];
    for world_seed in 0..100u64 {
        let n = 3 + (world_seed as usize % 8);
        let world = if world_seed % 3 == 2 {
            packed_expansion_world(n, world_seed, world_seed % 2 == 0)
        } else {
            let box_side = box_side_for(n, world_seed);
            random_initial::<f64>(n, 3.0, world_seed + 7_000, box_side)
                .expect("placement succeeds")
        };
        let positions = world.positions();
        let observer = (world_seed as usize) % n;
        let tol = Tolerances::default();

        let mut destinations: Vec<Vec<P>> = Vec::new();
        for handedness in [1i8, -1] {
            let frame = LocalFrame::new(handedness, positions[observer]);
            let snapshot = frame.snapshot(&positions, observer, world.spec);
            let mut tie = TieBreaker::new(31 + world_seed);
            let dec = compute(&snapshot, &tol, &mut tie).expect("compute succeeds");
            let global = frame.decision_to_global(dec);
            phases[matches!(global.phase, ucircle::logic::Phase::Expansion) as usize] += 1;
            let mut set = global.candidates;
            set.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
            destinations.push(set);
        }
        let (plus, minus) = (&destinations[0], &destinations[1]);
        assert_eq!(
            plus.len(),
            minus.len(),
            "seed {world_seed}: candidate counts differ: {plus:?} vs {minus:?}"
        );
        for p in plus {
            assert!(
                minus.iter().any(|q| p.distance(*q) <= 1e-9),
                "seed {world_seed}: {p:?} admissible only under one handedness"
            );
        }
        checked += 1;
    }
    assert!(phases[0] > 0 && phases[1] > 0, "snapshots must span both phases");
    pass(6, &format!("{checked} snapshots give identical destination sets under both handednesses"));
}

#[test]
fn criterion_7_determinism_and_roundtrip() {
    let mut runs = 0;
    for n in [3usize, 5, 7, 10] {
        for seed_index in [0u64, 1, 2] {
            let master = n as u64 * 1000 + seed_index;
            for (_, policy) in policies(master) {
                let a = matrix_run(n, seed_index, &policy, master);
                let b = matrix_run(n, seed_index, &policy, master);
                let ja = a.to_jsonl();
                let jb = b.to_jsonl();
                assert_eq!(ja, jb, "n={n} seed={seed_index}: traces differ byte-wise");

                let parsed = Trace::<f64>::read_jsonl(ja.as_bytes()).expect("trace parses");
                assert_eq!(parsed, a, "serialization must round-trip");
                let replay = replay_trace(&parsed);
                let bad: Vec<_> = replay.iter().filter(|c| !c.pass).collect();
                assert!(bad.is_empty(), "replayed checks failed: {bad:?}");
                runs += 1;
            }
        }
    }
    pass(7, &format!("{runs} runs replayed byte-identically and re-check clean"));
}
