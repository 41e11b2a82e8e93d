use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use super::ActivationPolicy;
use crate::checker::CheckResult;
use crate::geometry::{Path, Point2};
use crate::logic::{DecisionNote, ExpansionMeta, Phase, TieEvent, Tolerances};
use crate::Scalar;

/// One robot's decision as recorded in the trace. `deferred` marks a move
/// the scheduler converted to a stay to serialize conflicting paths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionRecord<S> {
    pub id: usize,
    pub phase: Phase,
    pub moved: bool,
    pub destination: Option<Point2<S>>,
    pub path: Option<Path<S>>,
    pub notes: Vec<DecisionNote>,
    pub tie_events: Vec<TieEvent>,
    pub expansion: Option<ExpansionMeta<S>>,
    pub deferred: bool,
}

/// Everything that happened in one round.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord<S> {
    pub round: u64,
    pub activated: Vec<usize>,
    pub pre: Vec<Point2<S>>,
    pub post: Vec<Point2<S>>,
    pub decisions: Vec<DecisionRecord<S>>,
    /// Scheduler-level tie events (path-conflict deferrals).
    pub tie_events: Vec<TieEvent>,
    pub checks: Vec<CheckResult>,
}

impl<S: Scalar> RoundRecord<S> {
    /// Movers that actually executed this round, with their paths.
    pub fn executed_moves(&self) -> Vec<(usize, &Path<S>)> {
        self.decisions
            .iter()
            .filter(|d| d.moved && !d.deferred)
            .filter_map(|d| d.path.as_ref().map(|p| (d.id, p)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Formed,
    RoundCapReached,
    InvariantViolation { round: u64, detail: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader<S> {
    pub n: usize,
    pub side: S,
    pub radius: S,
    pub master_seed: u64,
    pub policy: ActivationPolicy,
    pub max_rounds: u64,
    pub tolerances: Tolerances,
    pub collision_samples: usize,
}

/// A full run: header, per-round records, outcome and the whole-trace
/// checks. Serialized as one JSON object per line so traces diff cleanly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace<S> {
    pub header: TraceHeader<S>,
    pub records: Vec<RoundRecord<S>>,
    pub outcome: Outcome,
    pub final_checks: Vec<CheckResult>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum TraceLine<S> {
    Header(TraceHeader<S>),
    Round(Box<RoundRecord<S>>),
    End {
        outcome: Outcome,
        final_checks: Vec<CheckResult>,
    },
}

impl<S: Scalar + Serialize + for<'de> Deserialize<'de>> Trace<S> {
    pub fn formed(&self) -> bool {
        self.outcome == Outcome::Formed
    }

    pub fn all_checks_pass(&self) -> bool {
        self.records
            .iter()
            .flat_map(|r| r.checks.iter())
            .chain(self.final_checks.iter())
            .all(|c| c.pass)
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        let header = TraceLine::Header(self.header.clone());
        writeln!(w, "{}", serde_json::to_string(&header)?)?;
        for record in &self.records {
            let line = TraceLine::Round(Box::new(record.clone()));
            writeln!(w, "{}", serde_json::to_string(&line)?)?;
        }
        let end = TraceLine::<S>::End {
            outcome: self.outcome.clone(),
            final_checks: self.final_checks.clone(),
        };
        writeln!(w, "{}", serde_json::to_string(&end)?)
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> io::Result<Self> {
        let mut header: Option<TraceHeader<S>> = None;
        let mut records = Vec::new();
        let mut end: Option<(Outcome, Vec<CheckResult>)> = None;
        for line in r.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: TraceLine<S> = serde_json::from_str(&line)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
            match parsed {
                TraceLine::Header(h) => header = Some(h),
                TraceLine::Round(rec) => records.push(*rec),
                TraceLine::End {
                    outcome,
                    final_checks,
                } => end = Some((outcome, final_checks)),
            }
        }
        let header = header.ok_or_else(|| {
            io::Error::new(io::ErrorKind::InvalidData, "trace has no header line")
        })?;
        let (outcome, final_checks) = end.ok_or_else(|| {
            io::Error::new(io::ErrorKind::InvalidData, "trace has no end line")
        })?;
        Ok(Self {
            header,
            records,
            outcome,
            final_checks,
        })
    }
}
