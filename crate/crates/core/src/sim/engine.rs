use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    tie_seed, ActivationPolicy, DecisionRecord, Outcome, RobotState, RoundRecord, SimError, Trace,
    TraceHeader, WorldState,
};
use crate::checker::{
    check_leaders_on_sec, check_motion_collision_free, check_progress, check_regular_polygon,
    check_sec_monotone, check_static_overlap,
};
use crate::geometry::{path_min_distance, FormationSpec, Path, Point2};
use crate::logic::{compute, Action, TieBreaker, TieEvent, Tolerances};
use crate::Scalar;

/// Everything a run needs beyond the initial world.
#[derive(Clone, Debug)]
pub struct RunParams {
    pub policy: ActivationPolicy,
    pub max_rounds: u64,
    pub master_seed: u64,
    pub tol: Tolerances,
    pub collision_samples: usize,
    /// Window for the progress check; defaults to `5 n` when `None`.
    pub progress_window: Option<usize>,
}

impl RunParams {
    pub fn new(policy: ActivationPolicy, max_rounds: u64, master_seed: u64) -> Self {
        Self {
            policy,
            max_rounds,
            master_seed,
            tol: Tolerances::default(),
            collision_samples: 1000,
            progress_window: None,
        }
    }
}

/// Movers whose paths come closer than this are serialized by the
/// scheduler (the margin over 2 absorbs arc sampling error).
const PATH_CONFLICT_CLEARANCE: f64 = 2.0 + 1e-3;

/// One semi-synchronous round: every activated robot observes the same
/// pre-round world and computes; all accepted movers then traverse their
/// full paths simultaneously.
pub fn step<S: Scalar>(
    world: &WorldState<S>,
    activated: &[usize],
    master_seed: u64,
    tol: &Tolerances,
) -> Result<(WorldState<S>, RoundRecord<S>), SimError> {
    if activated.is_empty() {
        return Err(SimError::EmptyActivation);
    }
    world.validate(tol.geom())?;
    let n = world.robots.len();
    let mut ids: Vec<usize> = activated.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if let Some(&bad) = ids.iter().find(|&&i| i >= n) {
        return Err(SimError::UnknownRobot(bad));
    }

    let pre = world.positions();
    let mut decisions: Vec<DecisionRecord<S>> = Vec::with_capacity(ids.len());
    for &id in &ids {
        let frame = world.frame(id);
        let snapshot = frame.snapshot(&pre, id, world.spec);
        let mut tie = TieBreaker::new(tie_seed(master_seed, world.round, id as u64));
        let local = compute(&snapshot, tol, &mut tie)
            .map_err(|source| SimError::Compute { robot: id, source })?;
        let global = frame.decision_to_global(local);
        let (moved, destination, path) = match &global.action {
            Action::Stay => (false, None, None),
            Action::Move { destination, path } => (true, Some(*destination), Some(path.clone())),
        };
        decisions.push(DecisionRecord {
            id,
            phase: global.phase,
            moved,
            destination,
            path,
            notes: global.notes,
            tie_events: global.tie_events,
            expansion: global.expansion,
            deferred: false,
        });
    }

    // Scheduler arbitration: when two accepted paths would pass within two
    // units of each other (including identical destinations claimed by
    // mirror-tied robots), the lower-priority mover is held back one round.
    let mut round_ties: Vec<TieEvent> = Vec::new();
    let mut order: Vec<usize> = (0..decisions.len())
        .filter(|&k| decisions[k].moved)
        .collect();
    order.sort_by_key(|&k| tie_seed(master_seed, world.round, decisions[k].id as u64 ^ 0x5EED));
    let mut accepted: Vec<(usize, Path<S>)> = Vec::new();
    for k in order {
        let path = decisions[k].path.clone().expect("movers carry paths");
        let conflict = accepted.iter().find(|(_, other)| {
            path_min_distance(&path, other).to_f64_lossy() < PATH_CONFLICT_CLEARANCE
        });
        if let Some(&(winner_idx, _)) = conflict {
            decisions[k].deferred = true;
            round_ties.push(TieEvent {
                context: format!(
                    "deferred robot {} (path conflicts with robot {})",
                    decisions[k].id, decisions[winner_idx].id
                ),
                options: 2,
                chosen: 1,
            });
        } else {
            accepted.push((k, path));
        }
    }

    let mut post = pre.clone();
    for d in &decisions {
        if d.moved && !d.deferred {
            post[d.id] = d.destination.expect("movers carry destinations");
        }
    }

    let record = RoundRecord {
        round: world.round,
        activated: ids,
        pre,
        post: post.clone(),
        decisions,
        tie_events: round_ties,
        checks: Vec::new(),
    };

    let mut next = world.clone();
    for (robot, &p) in next.robots.iter_mut().zip(post.iter()) {
        robot.center = p;
    }
    next.round += 1;
    Ok((next, record))
}

/// Terminal test: the robots stand on the vertices of a regular polygon
/// whose spacing satisfies the formation side length.
pub fn detect_termination<S: Scalar>(world: &WorldState<S>, tol: &Tolerances) -> bool {
    check_regular_polygon(world, tol.eps_snap).pass
}

/// Runs rounds until the polygon forms, an invariant breaks, or the round
/// cap is hit. Per-round safety checks are recorded in the trace; a
/// physical violation (overlap or mid-motion collision) halts the run.
pub fn run<S: Scalar>(initial: WorldState<S>, params: &RunParams) -> Result<Trace<S>, SimError> {
    initial.validate(params.tol.geom())?;
    let header = TraceHeader {
        n: initial.spec.n,
        side: initial.spec.side,
        radius: initial.spec.radius,
        master_seed: params.master_seed,
        policy: params.policy.clone(),
        max_rounds: params.max_rounds,
        tolerances: params.tol,
        collision_samples: params.collision_samples,
    };

    let mut stream = params.policy.stream(params.master_seed);
    let mut world = initial;
    let mut records = Vec::new();
    let mut outcome = Outcome::RoundCapReached;

    for _ in 0..params.max_rounds {
        let activated = stream.next_set(world.round, world.spec.n);
        let (next, mut record) = step(&world, &activated, params.master_seed, &params.tol)?;

        let static_check = check_static_overlap(&next);
        let motion_check = check_motion_collision_free(&record, params.collision_samples);
        let leaders_check = check_leaders_on_sec(&record);
        let violated = !static_check.pass || !motion_check.pass;
        let violation_detail = if !motion_check.pass {
            motion_check.detail.clone()
        } else {
            static_check.detail.clone()
        };
        record.checks = vec![static_check, motion_check, leaders_check];
        let round = record.round;
        records.push(record);
        world = next;

        if violated {
            outcome = Outcome::InvariantViolation {
                round,
                detail: violation_detail,
            };
            break;
        }
        if detect_termination(&world, &params.tol) {
            outcome = Outcome::Formed;
            break;
        }
    }

    let mut trace = Trace {
        header,
        records,
        outcome,
        final_checks: Vec::new(),
    };
    let window = params.progress_window.unwrap_or(5 * world.spec.n);
    let mut final_checks = vec![
        check_sec_monotone(&trace),
        check_progress(&trace, window),
    ];
    if trace.outcome == Outcome::Formed {
        final_checks.push(check_regular_polygon(&world, params.tol.eps_snap));
    }
    trace.final_checks = final_checks;
    Ok(trace)
}

/// Seeded random initial configuration: centers uniform in a centered box,
/// rejected until pairwise separation reaches 2.1; handedness is drawn per
/// robot from the same stream.
pub fn random_initial<S: Scalar>(
    n: usize,
    side: S,
    seed: u64,
    box_side: f64,
) -> Result<WorldState<S>, SimError> {
    let spec = FormationSpec::new(n, side)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = box_side / 2.0;
    let min_sep = 2.1;

    const MAX_ATTEMPTS: usize = 200_000;
    let mut attempts = 0;
    let mut centers: Vec<Point2<S>> = Vec::with_capacity(n);
    while centers.len() < n {
        if attempts >= MAX_ATTEMPTS {
            return Err(SimError::PlacementFailed {
                n,
                side: box_side,
                attempts,
            });
        }
        attempts += 1;
        let x = rng.gen_range(-half..=half);
        let y = rng.gen_range(-half..=half);
        let p = Point2::new(S::from_f64_lossy(x), S::from_f64_lossy(y));
        let ok = centers
            .iter()
            .all(|&c| c.distance(p).to_f64_lossy() >= min_sep);
        if ok {
            centers.push(p);
        } else if attempts % 2_000 == 0 {
            // Stuck in a dead end: restart the placement.
            centers.clear();
        }
    }

    let robots = centers
        .into_iter()
        .enumerate()
        .map(|(id, center)| RobotState {
            id,
            center,
            handedness: if rng.gen::<bool>() { 1 } else { -1 },
        })
        .collect();
    Ok(WorldState::new(spec, robots))
}
