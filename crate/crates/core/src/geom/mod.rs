//! Numeric kernel: points, circles, directed circular arcs, Möbius
//! transformations and placement circles.
//!
//! Angles are radians internally; the public drawing/verifier APIs report
//! residuals in degrees. A straight segment is an arc with `turn == 0`.

mod arc;
mod biarc;
mod circle;
mod intersect;
mod mobius;
mod placement;

pub use arc::{bisector_arc, CircleArc};
pub use biarc::biarc;
pub use circle::{circle_through, orthogonal_circle_through, Circle, GenCircle};
pub use intersect::{arc_arc_distance, arc_intersections, Intersection};
pub use mobius::Mobius;
pub use placement::placement_circle;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Angle/tangency tolerance in degrees for verification.
pub const TOL_ANGLE_DEG: f64 = 1e-9;
/// Tolerance for algebraic identities (composition, round-trips).
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Residual bound for accepted circle packings.
pub const TOL_PACKING: f64 = 1e-8;

/// A point in the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Pt {
    pub x: f64,
    pub y: f64,
}

impl Pt {
    pub const fn new(x: f64, y: f64) -> Self {
        Pt { x, y }
    }

    pub fn dot(self, o: Pt) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product; positive if `o` is counter-clockwise from `self`.
    pub fn cross(self, o: Pt) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, o: Pt) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Pt {
        let n = self.norm();
        Pt::new(self.x / n, self.y / n)
    }

    /// Direction angle in (-pi, pi].
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Unit vector with the given direction angle.
    pub fn dir(theta: f64) -> Pt {
        Pt::new(theta.cos(), theta.sin())
    }

    /// Rotation by 90° counter-clockwise.
    pub fn rot90(self) -> Pt {
        Pt::new(-self.y, self.x)
    }

    pub fn rotated(self, theta: f64) -> Pt {
        let (s, c) = theta.sin_cos();
        Pt::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Pt, t: f64) -> Pt {
        self + (o - self) * t
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Pt {
        Pt::new(z.re, z.im)
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        Pt::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        Pt::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Pt {
    type Output = Pt;
    fn mul(self, s: f64) -> Pt {
        Pt::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Pt {
    type Output = Pt;
    fn div(self, s: f64) -> Pt {
        Pt::new(self.x / s, self.y / s)
    }
}

impl Neg for Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-self.x, -self.y)
    }
}

/// Normalize an angle to (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let mut a = a % std::f64::consts::TAU;
    if a <= -std::f64::consts::PI {
        a += std::f64::consts::TAU;
    } else if a > std::f64::consts::PI {
        a -= std::f64::consts::TAU;
    }
    a
}

/// Counter-clockwise angle from direction `a` to direction `b`, in [0, 2*pi).
pub fn ccw_gap(a: f64, b: f64) -> f64 {
    let mut d = (b - a) % std::f64::consts::TAU;
    if d < 0.0 {
        d += std::f64::consts::TAU;
    }
    d
}

pub fn deg(rad: f64) -> f64 {
    rad.to_degrees()
}

pub fn rad(deg: f64) -> f64 {
    deg.to_radians()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_and_gap() {
        assert!((wrap_angle(3.0 * std::f64::consts::PI) - std::f64::consts::PI).abs() < 1e-12);
        assert!((ccw_gap(0.1, 0.3) - 0.2).abs() < 1e-12);
        assert!((ccw_gap(0.3, 0.1) - (std::f64::consts::TAU - 0.2)).abs() < 1e-12);
    }
}
