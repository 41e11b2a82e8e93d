//! `ucircle` — simulate and verify uniform circle formation by unit-disc
//! robots under semi-synchronous scheduling.

mod commands;
mod config;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{BatchSpec, EXIT_USAGE};
use config::RunConfig;

#[derive(Parser)]
#[command(name = "ucircle", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and write its trace, report and frames.
    Run(RunArgs),
    /// Re-verify a recorded trace independently of the simulator.
    Check {
        /// Trace file produced by `run` (one JSON object per line).
        trace: PathBuf,
    },
    /// Run a matrix of simulations and print a summary table.
    Batch(BatchArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML config file; explicit flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of robots (>= 3).
    #[arg(long)]
    n: Option<usize>,
    /// Minimum polygon side length (>= 3).
    #[arg(long)]
    a: Option<f64>,
    /// Explicit centers as "x,y;x,y;...". Mutually exclusive with --seed.
    #[arg(long)]
    centers: Option<String>,
    /// Random placement seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Side of the random placement box.
    #[arg(long = "box")]
    box_side: Option<f64>,
    /// Scheduler: all, random-subset or round-robin.
    #[arg(long)]
    policy: Option<String>,
    #[arg(long)]
    policy_seed: Option<u64>,
    /// Round cap (default 200 n).
    #[arg(long)]
    max_rounds: Option<u64>,
    #[arg(long)]
    master_seed: Option<u64>,
    /// Collision check samples per round.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    eps_geom: Option<f64>,
    #[arg(long)]
    eps_snap: Option<f64>,
    #[arg(long)]
    phase_slack: Option<f64>,
    /// Trace output path (JSON lines).
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Report output path (plain text; also printed).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory for per-round SVG frames.
    #[arg(long)]
    svg_dir: Option<PathBuf>,
}

#[derive(Args)]
struct BatchArgs {
    /// Robot counts, e.g. "3,4,5" or "3..10" (inclusive).
    #[arg(long, default_value = "3..10")]
    n: String,
    /// Seeds per (n, policy) cell.
    #[arg(long, default_value_t = 25)]
    seeds: u64,
    /// Comma-separated policies.
    #[arg(long, default_value = "all,random-subset,round-robin")]
    policies: String,
    /// Minimum polygon side length.
    #[arg(long, default_value_t = 3.0)]
    a: f64,
    /// Placement box override (default: target diameter plus margin).
    #[arg(long = "box")]
    box_side: Option<f64>,
    /// Directory to keep every per-run trace.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn parse_centers(text: &str) -> anyhow::Result<Vec<[f64; 2]>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| anyhow::anyhow!("center '{pair}' is not 'x,y'"))?;
            Ok([x.trim().parse()?, y.trim().parse()?])
        })
        .collect()
}

fn parse_ns(text: &str) -> anyhow::Result<Vec<usize>> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse()?;
        let hi: usize = hi.trim().parse()?;
        anyhow::ensure!(lo <= hi, "empty range {text}");
        Ok((lo..=hi).collect())
    } else {
        text.split(',')
            .map(|s| Ok(s.trim().parse()?))
            .collect()
    }
}

fn run_command(args: RunArgs) -> anyhow::Result<i32> {
    let base = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let centers = match &args.centers {
        Some(text) => Some(parse_centers(text)?),
        None => None,
    };
    let overlay = RunConfig {
        n: args.n,
        a: args.a,
        centers,
        seed: args.seed,
        box_side: args.box_side,
        policy: args.policy,
        policy_seed: args.policy_seed,
        max_rounds: args.max_rounds,
        master_seed: args.master_seed,
        samples: args.samples,
        eps_geom: args.eps_geom,
        eps_snap: args.eps_snap,
        phase_slack: args.phase_slack,
        trace: args.trace,
        report: args.report,
        svg_dir: args.svg_dir,
    };
    let resolved = base.overlay(overlay).resolve()?;
    commands::cmd_run(resolved)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Check { trace } => commands::cmd_check(&trace),
        Command::Batch(args) => {
            let spec = (|| -> anyhow::Result<BatchSpec> {
                Ok(BatchSpec {
                    ns: parse_ns(&args.n)?,
                    seeds: args.seeds,
                    policies: args
                        .policies
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect(),
                    side: args.a,
                    box_side: args.box_side,
                    out_dir: args.out_dir,
                })
            })();
            match spec {
                Ok(spec) => commands::cmd_batch(spec),
                Err(e) => {
                    eprintln!("invalid batch arguments: {e}");
                    Ok(EXIT_USAGE)
                }
            }
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
