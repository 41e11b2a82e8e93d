//! Uniform circle formation by transparent unit-disc robots, simulated and
//! verified at runtime.
//!
//! `n` anonymous, oblivious robots repeat look-compute-move cycles under a
//! semi-synchronous scheduler. They share the Y direction but not the X
//! orientation, and must end up equidistantly spaced on one circle (a convex
//! regular polygon) without two discs ever overlapping.
//!
//! Crate layout:
//!
//! * [`geometry`] — planar primitives: smallest enclosing circle, free-path
//!   and vacancy predicates, segment/arc paths, the formation radius.
//! * [`logic`] — the per-robot compute phase: leader election, enclosing
//!   circle expansion, target layout and assignment, path planning.
//! * [`sim`] — world state, activation policies, the round engine, traces.
//! * [`checker`] — runtime verification: collision freedom, circle
//!   monotonicity, progress, and final-polygon certification.
//!
//! The core is generic over the scalar type (see [`Scalar`]); the simulator
//! and CLI instantiate it at `f64` via the aliases below.

pub mod checker;
pub mod geometry;
pub mod logic;
pub mod scalar;
pub mod sim;

pub use scalar::Scalar;

/// Default tolerance for geometric predicates (on-circle, containment).
pub const DEFAULT_EPS_GEOM: f64 = 1e-9;
/// Default tolerance for "a robot sits at this point" snapping decisions.
pub const DEFAULT_EPS_SNAP: f64 = 1e-6;
/// Default hysteresis of the phase dispatch: how far the enclosing circle
/// may sag below the target radius before expansion reopens.
pub const DEFAULT_PHASE_SLACK: f64 = 0.5;

pub type Point2f32 = geometry::Point2<f32>;
pub type Point2f64 = geometry::Point2<f64>;
pub type Circlef32 = geometry::Circle<f32>;
pub type Circlef64 = geometry::Circle<f64>;
pub type Discf64 = geometry::Disc<f64>;
pub type Pathf64 = geometry::Path<f64>;
pub type FormationSpecf64 = geometry::FormationSpec<f64>;
pub type Snapshotf64 = logic::Snapshot<f64>;
pub type Decisionf64 = logic::Decision<f64>;
pub type WorldStatef64 = sim::WorldState<f64>;
pub type Tracef64 = sim::Trace<f64>;
