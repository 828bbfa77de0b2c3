use super::{Circle, CircleArc, GenCircle, Pt};
use crate::error::Error;
use crate::Result;
use num_complex::Complex64;

/// Fractional-linear transformation z ↦ (az + b)/(cz + d) of the extended
/// plane. Orientation-preserving; maps generalized circles to generalized
/// circles and preserves angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

const INF: Complex64 = Complex64::new(f64::INFINITY, f64::INFINITY);

fn is_inf(z: Complex64) -> bool {
    !z.re.is_finite() || !z.im.is_finite()
}

impl Mobius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if det.norm() < 1e-20 * scale * scale || scale == 0.0 {
            return Err(Error::DegenerateTriple);
        }
        Ok(Mobius { a, b, c, d }.normalized())
    }

    pub fn identity() -> Self {
        Mobius {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// Scale coefficients so that ad - bc = 1.
    pub fn normalized(self) -> Self {
        let det = self.a * self.d - self.b * self.c;
        let k = 1.0 / det.sqrt();
        Mobius {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
        }
    }

    pub fn translation(t: Pt) -> Self {
        Mobius {
            a: Complex64::new(1.0, 0.0),
            b: t.to_complex(),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// Similarity z ↦ s z + t.
    pub fn similarity(s: Complex64, t: Complex64) -> Result<Self> {
        Mobius::new(s, t, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        if is_inf(z) {
            return if self.c.norm() < 1e-300 { INF } else { self.a / self.c };
        }
        let den = self.c * z + self.d;
        if den.norm() < 1e-300 {
            INF
        } else {
            (self.a * z + self.b) / den
        }
    }

    pub fn apply_pt(&self, p: Pt) -> Result<Pt> {
        let w = self.apply(p.to_complex());
        if is_inf(w) || w.norm() > 1e300 {
            return Err(Error::PoleOnObject);
        }
        Ok(Pt::from_complex(w))
    }

    /// The point mapped to infinity (None for affine maps).
    pub fn pole(&self) -> Option<Pt> {
        if self.c.norm() < 1e-300 {
            None
        } else {
            Some(Pt::from_complex(-self.d / self.c))
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
        .normalized()
    }

    /// Map p1 → 0, p2 → 1, p3 → ∞. Arguments may be infinite.
    pub fn to_zero_one_inf(p1: Complex64, p2: Complex64, p3: Complex64) -> Result<Mobius> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        if is_inf(p1) {
            // z ↦ (p2 - p3)/(z - p3)
            return Mobius::new(zero, p2 - p3, one, -p3);
        }
        if is_inf(p2) {
            // z ↦ (z - p1)/(z - p3)
            return Mobius::new(one, -p1, one, -p3);
        }
        if is_inf(p3) {
            // z ↦ (z - p1)/(p2 - p1)
            return Mobius::new(one, -p1, zero, p2 - p1);
        }
        Mobius::new(p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1))
    }

    /// The transformation with pi ↦ qi for two triples of distinct points.
    pub fn sending(p: [Complex64; 3], q: [Complex64; 3]) -> Result<Mobius> {
        let f = Mobius::to_zero_one_inf(p[0], p[1], p[2])?;
        let g = Mobius::to_zero_one_inf(q[0], q[1], q[2])?;
        Ok(g.inverse().compose(&f))
    }

    /// Derivative at a finite point.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let det = self.a * self.d - self.b * self.c;
        let den = self.c * z + self.d;
        det / (den * den)
    }

    /// Image of an arc. The endpoint tangent is transported through the
    /// derivative (exact up to rounding), which keeps nearly straight arcs
    /// stable; reconstruction through three mapped points would lose the
    /// turn entirely. Fails when the pole lies on the arc (the image would
    /// pass through infinity).
    pub fn apply_arc(&self, arc: &CircleArc) -> Result<CircleArc> {
        let p = self.apply_pt(arc.p)?;
        let q = self.apply_pt(arc.q)?;
        let fp = self.derivative(arc.p.to_complex());
        if !fp.re.is_finite() || !fp.im.is_finite() || fp.norm() < 1e-300 {
            return Err(Error::PoleOnObject);
        }
        let tangent =
            Pt::from_complex(arc.tangent_at_p().to_complex() * fp).normalized();
        let out = CircleArc::from_tangent(p, q, tangent).map_err(|_| Error::PoleOnObject)?;
        // A pole strictly inside the arc would send the image through
        // infinity; the finite reconstruction then misses the mapped
        // midpoint by a large margin.
        let mid = self.apply_pt(arc.midpoint())?;
        if out.distance_to_point(mid) > 1e-5 * (p.dist(q) + out.length()) {
            return Err(Error::PoleOnObject);
        }
        Ok(out)
    }

    /// Image of a circle (a line when the circle passes through the pole).
    pub fn apply_circle(&self, c: &Circle) -> Result<GenCircle> {
        let pts: Vec<Complex64> = [0.0, 2.1, 4.2]
            .iter()
            .map(|&t| self.apply(c.point_at(t).to_complex()))
            .collect();
        if pts.iter().any(|z| is_inf(*z)) {
            // Recompute from three other points away from the pole.
            let pts2: Vec<Pt> = [1.0, 3.0, 5.0]
                .iter()
                .map(|&t| self.apply_pt(c.point_at(t)))
                .collect::<Result<_>>()?;
            return super::circle::circle_through(pts2[0], pts2[1], pts2[2]);
        }
        super::circle::circle_through(
            Pt::from_complex(pts[0]),
            Pt::from_complex(pts[1]),
            Pt::from_complex(pts[2]),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::TOL_ALGEBRAIC;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn identity_fixes_everything() {
        let m = Mobius::identity();
        let z = c(0.3, -1.7);
        assert!((m.apply(z) - z).norm() < TOL_ALGEBRAIC);
    }

    #[test]
    fn sending_maps_triples() {
        let p = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        let q = [c(2.0, 1.0), c(-1.0, 0.5), c(0.0, -3.0)];
        let m = Mobius::sending(p, q).unwrap();
        for i in 0..3 {
            assert!((m.apply(p[i]) - q[i]).norm() < 1e-12);
        }
        let inv = m.inverse();
        let round = inv.compose(&m);
        let z = c(0.123, 0.456);
        assert!((round.apply(z) - z).norm() < 1e-12);
    }

    #[test]
    fn straighten_through_infinity() {
        // Send an arc's interior point to infinity: endpoints map to finite
        // points, and the complement is the straight connection.
        let m = Mobius::sending(
            [c(-1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)],
            [c(-1.0, 0.0), INF, c(1.0, 0.0)],
        )
        .unwrap();
        assert!((m.apply(c(-1.0, 0.0)) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!(is_inf(m.apply(c(0.0, 1.0))));
    }

    #[test]
    fn angle_preservation_on_circles() {
        use crate::geom::circle::circle_through;
        // Two crossing circles keep their intersection angle.
        let c1 = Circle::new(Pt::new(0.0, 0.0), 1.0);
        let c2 = Circle::new(Pt::new(1.0, 0.2), 0.9);
        let ang = c1.crossing_angle(&c2).unwrap();
        let m = Mobius::sending(
            [c(5.0, 5.0), c(6.0, 5.0), c(5.0, 6.0)],
            [c(0.0, 0.0), c(0.5, 0.1), INF],
        )
        .unwrap();
        let i1 = m.apply_circle(&c1).unwrap();
        let i2 = m.apply_circle(&c2).unwrap();
        if let (GenCircle::Circle(a), GenCircle::Circle(b)) = (i1, i2) {
            let ang2 = a.crossing_angle(&b).unwrap();
            assert!((ang - ang2).abs() < 1e-9, "{ang} vs {ang2}");
        } else {
            panic!("expected circles");
        }
        let _ = circle_through; // silence unused import in cfg(test)
    }
}
