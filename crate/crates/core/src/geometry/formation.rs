use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::Scalar;

/// Minimum radius of a circle on which `n` robots can sit with adjacent
/// centers `side` apart: `side / (2 sin(pi/n))`.
///
/// `side` must be at least 3 so that a unit disc can never cover parts of two
/// adjacent target positions at once.
pub fn formation_radius<S: Scalar>(n: usize, side: S) -> Result<S, GeometryError> {
    if n < 3 || side < S::from_f64_lossy(3.0) {
        return Err(GeometryError::InvalidSpec {
            n,
            side: side.to_f64_lossy(),
        });
    }
    let half_angle = S::PI() / S::from_usize(n).unwrap();
    Ok(side / (S::two() * half_angle.sin()))
}

/// Chord length subtended by `central_angle` on a circle of the given radius:
/// `2 r sin(angle/2)`. The angle must lie in `(0, pi]`.
pub fn chord_for_angle<S: Scalar>(radius: S, central_angle: S) -> Result<S, GeometryError> {
    if radius <= S::zero() {
        return Err(GeometryError::OutOfRange(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if central_angle <= S::zero() || central_angle > S::PI() {
        return Err(GeometryError::OutOfRange(format!(
            "central angle must be in (0, pi], got {central_angle}"
        )));
    }
    Ok(S::two() * radius * (central_angle * S::half()).sin())
}

/// The formation parameters every robot derives from the common inputs
/// `(n, side)`: the target circle radius and the angular spacing of targets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormationSpec<S> {
    /// Number of robots (at least 3).
    pub n: usize,
    /// Minimum side length of the final polygon (at least 3).
    pub side: S,
    /// Target circle radius, derived from `n` and `side`.
    pub radius: S,
    /// Central angle between adjacent targets, `2 pi / n`.
    pub central_angle: S,
}

impl<S: Scalar> FormationSpec<S> {
    pub fn new(n: usize, side: S) -> Result<Self, GeometryError> {
        let radius = formation_radius(n, side)?;
        Ok(Self {
            n,
            side,
            radius,
            central_angle: S::TAU() / S::from_usize(n).unwrap(),
        })
    }
}
