//! Run configuration: a TOML file with the same keys as the CLI flags;
//! explicit flags win over file values.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use ucircle::geometry::Point2;
use ucircle::logic::Tolerances;
use ucircle::sim::{random_initial, ActivationPolicy, PolicyKind, RobotState, WorldState};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Number of robots (at least 3).
    pub n: Option<usize>,
    /// Minimum side length of the final polygon (at least 3).
    pub a: Option<f64>,
    /// Explicit robot centers; mutually exclusive with `seed`/`box`.
    pub centers: Option<Vec<[f64; 2]>>,
    /// Placement seed for a random initial configuration.
    pub seed: Option<u64>,
    /// Side of the centered square the random placement draws from.
    #[serde(rename = "box")]
    pub box_side: Option<f64>,
    /// Scheduler: "all", "random-subset" or "round-robin".
    pub policy: Option<String>,
    pub policy_seed: Option<u64>,
    /// Round cap; defaults to 200 n.
    pub max_rounds: Option<u64>,
    pub master_seed: Option<u64>,
    /// Samples per round for the continuous collision check.
    pub samples: Option<usize>,
    pub eps_geom: Option<f64>,
    pub eps_snap: Option<f64>,
    pub phase_slack: Option<f64>,
    pub trace: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub svg_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Overlays `other` (CLI flags) on top of this config.
    pub fn overlay(mut self, other: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            n, a, centers, seed, box_side, policy, policy_seed, max_rounds, master_seed,
            samples, eps_geom, eps_snap, phase_slack, trace, report, svg_dir
        );
        self
    }

    pub fn resolve(self) -> Result<ResolvedRun> {
        let n = self.n.context("n is required (>= 3)")?;
        let a = self.a.unwrap_or(3.0);
        if n < 3 {
            bail!("n must be at least 3, got {n}");
        }
        if a < 3.0 {
            bail!("side length a must be at least 3, got {a}");
        }
        let master_seed = self.master_seed.unwrap_or(0);
        let max_rounds = self.max_rounds.unwrap_or(200 * n as u64);
        if max_rounds < 1 {
            bail!("max_rounds must be at least 1");
        }

        let policy_seed = self.policy_seed.unwrap_or(master_seed);
        let policy = match self.policy.as_deref().unwrap_or("all") {
            "all" => ActivationPolicy::all(),
            "random-subset" => ActivationPolicy {
                kind: PolicyKind::RandomSubset,
                seed: policy_seed,
            },
            "round-robin" => ActivationPolicy::round_robin(),
            other => bail!("unknown policy '{other}' (use all, random-subset or round-robin)"),
        };

        let tol = Tolerances {
            eps_geom: self.eps_geom.unwrap_or(ucircle::DEFAULT_EPS_GEOM),
            eps_snap: self.eps_snap.unwrap_or(ucircle::DEFAULT_EPS_SNAP),
            phase_slack: self.phase_slack.unwrap_or(ucircle::DEFAULT_PHASE_SLACK),
        };

        let world = match (&self.centers, self.seed) {
            (Some(centers), None) => {
                if centers.len() != n {
                    bail!("{} centers given for n = {n}", centers.len());
                }
                let spec = ucircle::geometry::FormationSpec::new(n, a)
                    .map_err(|e| anyhow::anyhow!("{e}"))?;
                let robots = centers
                    .iter()
                    .enumerate()
                    .map(|(id, &[x, y])| RobotState {
                        id,
                        center: Point2::new(x, y),
                        handedness: if (master_seed ^ id as u64) % 2 == 0 { 1 } else { -1 },
                    })
                    .collect();
                let world = WorldState::new(spec, robots);
                world
                    .validate(tol.eps_geom)
                    .map_err(|e| anyhow::anyhow!("invalid explicit centers: {e}"))?;
                world
            }
            (None, seed) => {
                let seed = seed.unwrap_or(master_seed);
                let box_side = self.box_side.unwrap_or_else(|| {
                    let r = ucircle::geometry::formation_radius(n, a).unwrap_or(a);
                    2.0 * r + 2.0
                });
                random_initial::<f64>(n, a, seed, box_side)
                    .map_err(|e| anyhow::anyhow!("random placement failed: {e}"))?
            }
            (Some(_), Some(_)) => bail!("give either explicit centers or a placement seed, not both"),
        };

        Ok(ResolvedRun {
            world,
            policy,
            max_rounds,
            master_seed,
            tol,
            samples: self.samples.unwrap_or(1000),
            trace: self.trace,
            report: self.report,
            svg_dir: self.svg_dir,
        })
    }
}

pub struct ResolvedRun {
    pub world: WorldState<f64>,
    pub policy: ActivationPolicy,
    pub max_rounds: u64,
    pub master_seed: u64,
    pub tol: Tolerances,
    pub samples: usize,
    pub trace: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub svg_dir: Option<PathBuf>,
}
