//! Runtime verification: every safety and progress claim about a run is
//! re-checked numerically, either per round while simulating or afterwards
//! from a recorded trace. All checks are pure functions.

use serde::{Deserialize, Serialize};

use crate::geometry::{
    ccw_delta, path_min_distance, smallest_enclosing_circle, Point2,
};
use crate::logic::compute_target_points;
use crate::sim::{Outcome, RoundRecord, Trace, WorldState};
use crate::Scalar;

/// Collision threshold: center distance below `2 - COLLISION_SLACK` counts
/// as an overlap; sliding contact at exactly 2 is legal.
pub const COLLISION_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// Signed distance to violation; `None` when the check was vacuous.
    pub worst_margin: Option<f64>,
}

impl CheckResult {
    fn pass_with(name: &str, detail: String, margin: f64) -> Self {
        Self {
            name: name.into(),
            pass: margin >= -COLLISION_SLACK,
            detail,
            worst_margin: Some(margin),
        }
    }

    fn vacuous(name: &str, detail: &str) -> Self {
        Self {
            name: name.into(),
            pass: true,
            detail: detail.into(),
            worst_margin: None,
        }
    }
}

/// Static non-overlap: minimum pairwise center distance at least 2.
pub fn check_static_overlap<S: Scalar>(world: &WorldState<S>) -> CheckResult {
    check_positions_overlap(&world.positions())
}

pub fn check_positions_overlap<S: Scalar>(positions: &[Point2<S>]) -> CheckResult {
    let mut min = f64::INFINITY;
    let mut pair = (0, 0);
    for i in 0..positions.len() {
        for j in (i + 1)..positions.len() {
            let d = positions[i].distance(positions[j]).to_f64_lossy();
            if d < min {
                min = d;
                pair = (i, j);
            }
        }
    }
    if positions.len() < 2 {
        return CheckResult::vacuous("static-overlap", "fewer than two robots");
    }
    CheckResult::pass_with(
        "static-overlap",
        format!("min center distance {min:.9} between robots {} and {}", pair.0, pair.1),
        min - 2.0,
    )
}

/// Continuous collision freedom for one round: all movers sampled along
/// their paths at a common fraction against everyone else, plus an exact
/// whole-path cross-check (segment pairs closed-form, arcs finely sampled).
pub fn check_motion_collision_free<S: Scalar>(
    record: &RoundRecord<S>,
    samples: usize,
) -> CheckResult {
    let movers = record.executed_moves();
    if movers.is_empty() {
        return CheckResult::vacuous("motion-collision-free", "no movers this round");
    }
    let samples = samples.max(2);
    let mover_ids: Vec<usize> = movers.iter().map(|&(id, _)| id).collect();
    let statics: Vec<(usize, Point2<S>)> = record
        .pre
        .iter()
        .enumerate()
        .filter(|(i, _)| !mover_ids.contains(i))
        .map(|(i, &p)| (i, p))
        .collect();

    let mut min = f64::INFINITY;
    let mut detail = String::new();
    let mut note = |d: f64, what: String| {
        if d < min {
            min = d;
            detail = what;
        }
    };

    // Common-fraction sampling: simultaneous rigid motion.
    for k in 0..samples {
        let t = S::from_usize(k).unwrap() / S::from_usize(samples - 1).unwrap();
        let at: Vec<Point2<S>> = movers
            .iter()
            .map(|(_, path)| path.point_at(t).expect("t in [0,1]"))
            .collect();
        for (a, &pa) in at.iter().enumerate() {
            for (b, &pb) in at.iter().enumerate().skip(a + 1) {
                note(
                    pa.distance(pb).to_f64_lossy(),
                    format!(
                        "movers {} and {} at t = {:.4}",
                        mover_ids[a],
                        mover_ids[b],
                        t.to_f64_lossy()
                    ),
                );
            }
            for &(sid, sp) in &statics {
                note(
                    pa.distance(sp).to_f64_lossy(),
                    format!(
                        "mover {} vs robot {sid} at t = {:.4}",
                        mover_ids[a],
                        t.to_f64_lossy()
                    ),
                );
            }
        }
    }

    // Exact cross-check, independent of traversal timing.
    for (a, &(ida, patha)) in movers.iter().enumerate() {
        for &(sid, sp) in &statics {
            note(
                patha.min_distance_to_point(sp).to_f64_lossy(),
                format!("mover {ida} path vs robot {sid}"),
            );
        }
        for &(idb, pathb) in movers.iter().skip(a + 1) {
            note(
                path_min_distance(patha, pathb).to_f64_lossy(),
                format!("mover {ida} path vs mover {idb} path"),
            );
        }
    }

    CheckResult::pass_with(
        "motion-collision-free",
        format!("worst clearance {min:.9} ({detail})"),
        min - 2.0,
    )
}

/// Rigid motion: post positions equal decision destinations for movers and
/// pre positions for everyone else, exactly.
pub fn check_rigid_motion<S: Scalar>(record: &RoundRecord<S>) -> CheckResult {
    for (i, (&pre, &post)) in record.pre.iter().zip(record.post.iter()).enumerate() {
        let dec = record.decisions.iter().find(|d| d.id == i);
        let expected = match dec {
            Some(d) if d.moved && !d.deferred => d.destination.expect("movers have destinations"),
            _ => pre,
        };
        if post != expected {
            return CheckResult {
                name: "rigid-motion".into(),
                pass: false,
                detail: format!("robot {i} post {post:?} differs from expected {expected:?}"),
                worst_margin: Some(-post.distance(expected).to_f64_lossy()),
            };
        }
    }
    CheckResult {
        name: "rigid-motion".into(),
        pass: true,
        detail: "post positions match decisions exactly".into(),
        worst_margin: Some(0.0),
    }
}

/// After an expansion move the mover must sit on the new enclosing circle;
/// for a lone mover its anchor robot must too. With simultaneous mirror
/// movers the anchors can legitimately fall inside (the movers themselves
/// span the new diameter), so anchors are only reported then.
pub fn check_leaders_on_sec<S: Scalar>(record: &RoundRecord<S>) -> CheckResult {
    let expansion_moves: Vec<_> = record
        .decisions
        .iter()
        .filter(|d| d.moved && !d.deferred && d.expansion.is_some())
        .collect();
    if expansion_moves.is_empty() {
        return CheckResult::vacuous("leaders-on-sec", "no expansion move this round");
    }
    // Fallback steps are plain outward nudges, not diameter constructions;
    // the rim claim does not apply to them.
    if expansion_moves.iter().any(|d| {
        d.expansion.expect("filtered").branch == crate::logic::ExpansionBranch::RadialFallback
    }) {
        return CheckResult::vacuous("leaders-on-sec", "fallback expansion step this round");
    }
    let Ok(sec) = smallest_enclosing_circle(&record.post) else {
        return CheckResult::vacuous("leaders-on-sec", "no post positions");
    };
    let tol = 1e-6;
    let mut worst = f64::INFINITY;
    let mut detail = String::new();
    for d in &expansion_moves {
        let dest = d.destination.expect("movers have destinations");
        let dev = (sec.center.distance(dest) - sec.radius).abs().to_f64_lossy();
        if tol - dev < worst {
            worst = tol - dev;
            detail = format!("mover {} off new circle by {dev:.2e}", d.id);
        }
        if expansion_moves.len() == 1 {
            let anchor = d.expansion.expect("filtered").anchor;
            let dev = (sec.center.distance(anchor) - sec.radius)
                .abs()
                .to_f64_lossy();
            if tol - dev < worst {
                worst = tol - dev;
                detail = format!("anchor of mover {} off new circle by {dev:.2e}", d.id);
            }
        }
    }
    CheckResult {
        name: "leaders-on-sec".into(),
        pass: worst >= 0.0,
        detail,
        worst_margin: Some(worst),
    }
}

fn sec_radius_of<S: Scalar>(positions: &[Point2<S>]) -> f64 {
    smallest_enclosing_circle(positions)
        .map(|c| c.radius.to_f64_lossy())
        .unwrap_or(0.0)
}

/// The enclosing circle never shrinks across an expansion round, and once
/// the run forms, the last expansion round reached the target radius.
pub fn check_sec_monotone<S: Scalar>(trace: &Trace<S>) -> CheckResult {
    let r = trace.header.radius.to_f64_lossy();
    let tol = trace.header.tolerances;
    let mut worst = f64::INFINITY;
    let mut detail = String::from("no expansion rounds");
    let mut last_expansion_post: Option<f64> = None;
    for rec in &trace.records {
        let pre = sec_radius_of(&rec.pre);
        if tol.is_expansion_phase(pre, r) {
            let post = sec_radius_of(&rec.post);
            let margin = post - pre;
            if margin < worst {
                worst = margin;
                detail = format!("round {}: radius {pre:.9} -> {post:.9}", rec.round);
            }
            last_expansion_post = Some(post);
        }
    }
    if worst == f64::INFINITY {
        return CheckResult::vacuous("sec-monotone", &detail);
    }
    let mut pass = worst >= -1e-9;
    if trace.outcome == Outcome::Formed {
        if let Some(post) = last_expansion_post {
            if tol.is_expansion_phase(post, r) {
                pass = false;
                detail = format!("expansion ended below target radius: {post:.9} < {r:.9}");
            }
        }
    }
    CheckResult {
        name: "sec-monotone".into(),
        pass,
        detail,
        worst_margin: Some(worst),
    }
}

/// Certifies a regular polygon: common circle, equal central angles, and
/// adjacent spacing no shorter than the required side.
pub fn check_regular_polygon<S: Scalar>(world: &WorldState<S>, tol: f64) -> CheckResult {
    check_polygon_positions(
        &world.positions(),
        world.spec.n,
        world.spec.side.to_f64_lossy(),
        tol,
    )
}

pub fn check_polygon_positions<S: Scalar>(
    positions: &[Point2<S>],
    n: usize,
    side: f64,
    tol: f64,
) -> CheckResult {
    let name = "regular-polygon";
    if positions.len() != n || n < 3 {
        return CheckResult {
            name: name.into(),
            pass: false,
            detail: format!("{} positions for n = {n}", positions.len()),
            worst_margin: Some(-1.0),
        };
    }
    let Ok(sec) = smallest_enclosing_circle(positions) else {
        return CheckResult::vacuous(name, "no positions");
    };
    let mut worst = f64::INFINITY;
    let mut detail = String::new();
    let mut note = |margin: f64, what: String| {
        if margin < worst {
            worst = margin;
            detail = what;
        }
    };

    for (i, &p) in positions.iter().enumerate() {
        let dev = (sec.center.distance(p) - sec.radius).abs().to_f64_lossy();
        note(tol - dev, format!("robot {i} off circle by {dev:.2e}"));
    }

    let mut angles: Vec<f64> = positions
        .iter()
        .map(|&p| sec.angle_of(p).to_f64_lossy())
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    let step = std::f64::consts::TAU / n as f64;
    for i in 0..n {
        let gap = ccw_delta(angles[i], angles[(i + 1) % n]);
        let dev = (gap - step).abs();
        note(tol - dev, format!("angular gap {i} off by {dev:.2e} rad"));
        let chord = 2.0 * sec.radius.to_f64_lossy() * (gap / 2.0).sin();
        note(
            chord - (side - tol),
            format!("adjacent chord {chord:.6} vs side {side}"),
        );
    }

    CheckResult {
        name: name.into(),
        pass: worst >= 0.0,
        detail: if detail.is_empty() {
            "regular polygon within tolerance".into()
        } else {
            detail
        },
        worst_margin: Some(worst),
    }
}

/// Progress: within every `window` consecutive rounds something improves —
/// a target gets occupied, the enclosing circle grows, or the run ends
/// formed.
pub fn check_progress<S: Scalar>(trace: &Trace<S>, window: usize) -> CheckResult {
    let name = "progress";
    let n = trace.header.n;
    let window = window.max(n);
    if trace.records.len() < window {
        return CheckResult::vacuous(name, "trace shorter than one window");
    }
    let tol = trace.header.tolerances;
    let r = trace.header.radius.to_f64_lossy();

    // Per-round (sec radius, occupied target count) over pre states, plus
    // the final post state.
    let mut seq: Vec<(f64, usize)> = Vec::with_capacity(trace.records.len() + 1);
    let occupied = |positions: &[Point2<S>]| -> (f64, usize) {
        let Ok(sec) = smallest_enclosing_circle(positions) else {
            return (0.0, 0);
        };
        let radius = sec.radius.to_f64_lossy();
        if tol.is_expansion_phase(radius, r) {
            return (radius, 0);
        }
        let lifted = crate::geometry::Circle::new(
            sec.center,
            sec.radius.max(S::from_f64_lossy(r)),
        );
        let Ok(layout) = compute_target_points(&lifted, positions, n, &tol) else {
            return (radius, 0);
        };
        let snap = S::from_f64_lossy(tol.eps_snap);
        let count = layout
            .points
            .iter()
            .filter(|&&t| positions.iter().any(|&p| p.distance(t) <= snap))
            .count();
        (radius, count)
    };
    for rec in &trace.records {
        seq.push(occupied(&rec.pre));
    }
    if let Some(last) = trace.records.last() {
        seq.push(occupied(&last.post));
    }

    let improves = |j: usize| seq[j + 1].1 > seq[j].1 || seq[j + 1].0 > seq[j].0 + 1e-12;
    for start in 0..=(trace.records.len() - window) {
        let formed_at_end =
            start + window == trace.records.len() && trace.outcome == Outcome::Formed;
        let any = (start..start + window).any(improves);
        if !any && !formed_at_end {
            return CheckResult {
                name: name.into(),
                pass: false,
                detail: format!(
                    "no progress in rounds {}..{}",
                    trace.records[start].round,
                    trace.records[start + window - 1].round
                ),
                worst_margin: Some(-1.0),
            };
        }
    }
    CheckResult {
        name: name.into(),
        pass: true,
        detail: format!("every {window}-round window improves"),
        worst_margin: Some(0.0),
    }
}

/// Re-runs every check over a recorded trace, independently of the
/// simulator that produced it.
pub fn replay_trace<S: Scalar>(trace: &Trace<S>) -> Vec<CheckResult> {
    let mut results = Vec::new();
    let prefix = |round: u64, mut c: CheckResult| {
        c.name = format!("round {round}: {}", c.name);
        c
    };
    for rec in &trace.records {
        results.push(prefix(rec.round, check_positions_overlap(&rec.post)));
        results.push(prefix(
            rec.round,
            check_motion_collision_free(rec, trace.header.collision_samples),
        ));
        results.push(prefix(rec.round, check_rigid_motion(rec)));
        results.push(prefix(rec.round, check_leaders_on_sec(rec)));
    }
    results.push(check_sec_monotone(trace));
    results.push(check_progress(trace, 5 * trace.header.n));
    if trace.outcome == Outcome::Formed {
        if let Some(last) = trace.records.last() {
            results.push(check_polygon_positions(
                &last.post,
                trace.header.n,
                trace.header.side.to_f64_lossy(),
                trace.header.tolerances.eps_snap,
            ));
        }
    }
    results
}
