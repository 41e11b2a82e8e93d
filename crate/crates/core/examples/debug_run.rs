//! Scratch diagnostics: re-run one matrix configuration and dump rounds.
//! Usage: debug_run <n> <seed_index> <all|random-subset|round-robin> [rounds]

use ucircle::geometry::{formation_radius, smallest_enclosing_circle};
use ucircle::sim::{random_initial, run, ActivationPolicy, RunParams};

fn box_side_for(n: usize, seed_index: u64) -> f64 {
    let r = formation_radius(n, 3.0_f64).unwrap();
    if seed_index % 2 == 0 {
        2.0 * r + 2.0
    } else {
        (2.8 * (n as f64).sqrt()).max(4.4)
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args[1].parse().unwrap();
    let seed_index: u64 = args[2].parse().unwrap();
    let master = n as u64 * 1000 + seed_index;
    let policy = match args[3].as_str() {
        "all" => ActivationPolicy::all(),
        "random-subset" => ActivationPolicy::random_subset(master),
        "round-robin" => ActivationPolicy::round_robin(),
        other => panic!("unknown policy {other}"),
    };
    let max_rounds: u64 = args
        .get(4)
        .map(|s| s.parse().unwrap())
        .unwrap_or(200 * n as u64);

    let world = random_initial::<f64>(n, 3.0, master, box_side_for(n, seed_index)).unwrap();
    println!("spec: n={n} side=3 r={:.6}", world.spec.radius);
    println!("box: {}", box_side_for(n, seed_index));
    for r in &world.robots {
        println!(
            "  robot {}: ({:.6}, {:.6}) h={}",
            r.id, r.center.x, r.center.y, r.handedness
        );
    }
    let params = RunParams::new(policy, max_rounds, master);
    let trace = run(world, &params).unwrap();
    println!("outcome: {:?} in {} rounds", trace.outcome, trace.records.len());
    for rec in &trace.records {
        let sec_pre = smallest_enclosing_circle(&rec.pre).unwrap();
        let sec_post = smallest_enclosing_circle(&rec.post).unwrap();
        let movers: Vec<String> = rec
            .decisions
            .iter()
            .filter(|d| d.moved)
            .map(|d| {
                format!(
                    "{}{}->({:.3},{:.3}){}{:?}",
                    d.id,
                    if d.deferred { "[deferred]" } else { "" },
                    d.destination.unwrap().x,
                    d.destination.unwrap().y,
                    if d.expansion.is_some() { "[exp]" } else { "" },
                    d.notes,
                )
            })
            .collect();
        let stays: Vec<String> = rec
            .decisions
            .iter()
            .filter(|d| !d.moved && !d.notes.is_empty())
            .map(|d| format!("{}{:?}", d.id, d.notes))
            .collect();
        println!(
            "round {:3} act {:?} sec {:.4}->{:.4} movers [{}] waits [{}] checks {}",
            rec.round,
            rec.activated,
            sec_pre.radius,
            sec_post.radius,
            movers.join("; "),
            stays.join("; "),
            rec.checks
                .iter()
                .map(|c| format!("{}:{}", c.name, if c.pass { "ok" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join(" ")
        );
        if rec.round > 60 {
            println!("  ... (truncated)");
            break;
        }
    }
}
