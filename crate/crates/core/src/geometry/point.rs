use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Scalar;

/// A point (or displacement vector) in the plane. Lengths are measured in
/// robot radii, so two robot centers may never be closer than 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero())
    }

    pub fn from_polar(radius: S, angle: S) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, other: Self) -> S {
        self.x * other.x + self.y * other.y
    }

    /// Z component of the cross product, as a scalar.
    pub fn cross(self, other: Self) -> S {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> S {
        self.dot(self)
    }

    pub fn norm(self) -> S {
        self.norm_sq().sqrt()
    }

    pub fn distance(self, other: Self) -> S {
        (self - other).norm()
    }

    pub fn distance_sq(self, other: Self) -> S {
        (self - other).norm_sq()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn try_normalize(self) -> Option<Self> {
        let n = self.norm();
        if n > S::zero() {
            Some(self / n)
        } else {
            None
        }
    }

    /// Unit vector in the same direction. Panics on the zero vector;
    /// callers must have excluded coincident points first.
    pub fn normalize(self) -> Self {
        self.try_normalize().expect("zero-length direction")
    }

    /// Polar angle in `(-pi, pi]`.
    pub fn angle(self) -> S {
        self.y.atan2(self.x)
    }

    pub fn lerp(self, other: Self, t: S) -> Self {
        self + (other - self) * t
    }

    /// Reflection across the vertical line `x = axis_x`.
    pub fn mirror_x(self, axis_x: S) -> Self {
        Self::new(axis_x + axis_x - self.x, self.y)
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<S: Scalar> Add for Point2<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<S: Scalar> Sub for Point2<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<S: Scalar> Mul<S> for Point2<S> {
    type Output = Self;
    fn mul(self, rhs: S) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl<S: Scalar> Div<S> for Point2<S> {
    type Output = Self;
    fn div(self, rhs: S) -> Self {
        Self::new(self.x / rhs, self.y / rhs)
    }
}

impl<S: Scalar> Neg for Point2<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}
