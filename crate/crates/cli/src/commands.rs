use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use ucircle::checker::replay_trace;
use ucircle::sim::{run, Outcome, RunParams, Trace};

use crate::config::ResolvedRun;
use crate::svg;

/// Exit status used by all subcommands: 0 success, 1 invariant or outcome
/// failure, 2 usage or validation error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn cmd_run(resolved: ResolvedRun) -> Result<i32> {
    let params = RunParams {
        policy: resolved.policy.clone(),
        max_rounds: resolved.max_rounds,
        master_seed: resolved.master_seed,
        tol: resolved.tol,
        collision_samples: resolved.samples,
        progress_window: None,
    };
    let trace = run(resolved.world, &params).map_err(|e| anyhow::anyhow!("{e}"))?;

    if let Some(path) = &resolved.trace {
        write_trace(&trace, path)?;
    }
    let report = render_report(&trace);
    if let Some(path) = &resolved.report {
        std::fs::write(path, &report).with_context(|| format!("writing {}", path.display()))?;
    }
    print!("{report}");

    if let Some(dir) = &resolved.svg_dir {
        std::fs::create_dir_all(dir)?;
        for rec in &trace.records {
            let frame = svg::render_frame(rec, &trace.header);
            let path = dir.join(format!("frame_{:04}.svg", rec.round));
            std::fs::write(&path, frame)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        println!("wrote {} frames to {}", trace.records.len(), dir.display());
    }

    let ok = trace.formed() && trace.all_checks_pass();
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn write_trace(trace: &Trace<f64>, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    trace
        .write_jsonl(BufWriter::new(file))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn render_report(trace: &Trace<f64>) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, side = {}, target radius = {:.9}",
        trace.header.n, trace.header.side, trace.header.radius
    );
    let _ = writeln!(
        s,
        "policy = {:?}, master seed = {}",
        trace.header.policy.kind, trace.header.master_seed
    );
    let _ = writeln!(s, "outcome = {:?} after {} rounds", trace.outcome, trace.records.len());

    let min_margin = trace
        .records
        .iter()
        .flat_map(|r| r.checks.iter())
        .filter(|c| c.name == "motion-collision-free")
        .filter_map(|c| c.worst_margin)
        .fold(f64::INFINITY, f64::min);
    if min_margin.is_finite() {
        let _ = writeln!(s, "minimum collision margin = {min_margin:.9}");
    }
    let deferrals: usize = trace.records.iter().map(|r| r.tie_events.len()).sum();
    if deferrals > 0 {
        let _ = writeln!(s, "scheduler deferrals = {deferrals}");
    }
    for check in &trace.final_checks {
        let _ = writeln!(
            s,
            "{}: {} ({})",
            check.name,
            if check.pass { "pass" } else { "FAIL" },
            check.detail
        );
    }
    s
}

pub fn cmd_check(path: &Path) -> Result<i32> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("cannot open {}: {e}", path.display());
            return Ok(EXIT_USAGE);
        }
    };
    let trace: Trace<f64> = match Trace::read_jsonl(BufReader::new(file)) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("malformed trace {}: {e}", path.display());
            return Ok(EXIT_USAGE);
        }
    };

    let results = replay_trace(&trace);
    let mut failed = 0;
    for r in &results {
        if !r.pass {
            failed += 1;
            println!("FAIL {} - {}", r.name, r.detail);
        }
    }
    println!(
        "{} checks replayed over {} rounds: {} failed (outcome {:?})",
        results.len(),
        trace.records.len(),
        failed,
        trace.outcome
    );
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

pub struct BatchSpec {
    pub ns: Vec<usize>,
    pub seeds: u64,
    pub policies: Vec<String>,
    pub side: f64,
    pub box_side: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

pub fn cmd_batch(spec: BatchSpec) -> Result<i32> {
    use ucircle::sim::{random_initial, ActivationPolicy, PolicyKind};

    if spec.side < 3.0 {
        eprintln!("side length must be at least 3, got {}", spec.side);
        return Ok(EXIT_USAGE);
    }
    for &n in &spec.ns {
        if n < 3 {
            eprintln!("n must be at least 3, got {n}");
            return Ok(EXIT_USAGE);
        }
    }
    if let Some(dir) = &spec.out_dir {
        std::fs::create_dir_all(dir)?;
    }

    let mut failures: Vec<String> = Vec::new();
    let mut lines = Vec::new();
    for &n in &spec.ns {
        for policy_name in &spec.policies {
            let mut formed = 0;
            let mut rounds_total = 0usize;
            let mut worst_margin = f64::INFINITY;
            for seed in 0..spec.seeds {
                let master = n as u64 * 1000 + seed;
                let policy = match policy_name.as_str() {
                    "all" => ActivationPolicy::all(),
                    "random-subset" => ActivationPolicy {
                        kind: PolicyKind::RandomSubset,
                        seed: master,
                    },
                    "round-robin" => ActivationPolicy::round_robin(),
                    other => {
                        eprintln!("unknown policy '{other}'");
                        return Ok(EXIT_USAGE);
                    }
                };
                let box_side = spec.box_side.unwrap_or_else(|| {
                    2.0 * ucircle::geometry::formation_radius(n, spec.side).unwrap() + 2.0
                });
                let world = random_initial::<f64>(n, spec.side, master, box_side)
                    .map_err(|e| anyhow::anyhow!("{e}"))?;
                let params = RunParams::new(policy, 200 * n as u64, master);
                let trace = run(world, &params).map_err(|e| anyhow::anyhow!("{e}"))?;

                let label = format!("n={n} seed={seed} policy={policy_name}");
                if trace.outcome != Outcome::Formed {
                    failures.push(format!("{label}: {:?}", trace.outcome));
                } else if !trace.all_checks_pass() {
                    failures.push(format!("{label}: checks failed"));
                } else {
                    formed += 1;
                }
                rounds_total += trace.records.len();
                let margin = trace
                    .records
                    .iter()
                    .flat_map(|r| r.checks.iter())
                    .filter_map(|c| c.worst_margin)
                    .fold(f64::INFINITY, f64::min);
                worst_margin = worst_margin.min(margin);

                if let Some(dir) = &spec.out_dir {
                    write_trace(
                        &trace,
                        &dir.join(format!("trace_n{n}_{policy_name}_s{seed}.jsonl")),
                    )?;
                }
            }
            lines.push(format!(
                "n={n:2} policy={policy_name:<14} formed {formed}/{} mean rounds {:.1} worst margin {worst_margin:.3e}",
                spec.seeds,
                rounds_total as f64 / spec.seeds as f64,
            ));
        }
    }

    println!("{}", lines.join("\n"));
    if failures.is_empty() {
        println!(
            "all {} runs formed with clean checks",
            spec.ns.len() * spec.policies.len() * spec.seeds as usize
        );
        Ok(EXIT_OK)
    } else {
        println!("{} failures:", failures.len());
        for f in &failures {
            println!("  {f}");
        }
        Ok(EXIT_FAILED)
    }
}
