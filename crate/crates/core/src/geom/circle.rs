use super::Pt;
use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Pt,
    pub radius: f64,
}

/// A circle or a line (infinite-radius circle).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenCircle {
    Circle(Circle),
    /// Line through `point` with unit direction `dir`.
    Line { point: Pt, dir: Pt },
}

impl Circle {
    pub fn new(center: Pt, radius: f64) -> Self {
        Circle { center, radius }
    }

    pub fn contains(&self, p: Pt) -> bool {
        p.dist(self.center) <= self.radius
    }

    /// Signed distance from the circle (negative inside).
    pub fn signed_dist(&self, p: Pt) -> f64 {
        p.dist(self.center) - self.radius
    }

    pub fn point_at(&self, theta: f64) -> Pt {
        self.center + Pt::dir(theta) * self.radius
    }

    pub fn intersect_circle(&self, o: &Circle) -> Vec<Pt> {
        let d = o.center - self.center;
        let dist = d.norm();
        if dist < 1e-15 {
            return vec![];
        }
        let (r0, r1) = (self.radius, o.radius);
        let a = (dist * dist + r0 * r0 - r1 * r1) / (2.0 * dist);
        let h2 = r0 * r0 - a * a;
        // Tangency threshold must not inflate with a huge radius.
        let scale = r0.min(r1).max(1e-300) + dist;
        if h2 < -1e-12 * scale * scale {
            return vec![];
        }
        let h = h2.max(0.0).sqrt();
        let base = self.center + d * (a / dist);
        let off = d.rot90() * (h / dist);
        if h <= 1e-12 * scale {
            vec![base]
        } else {
            vec![base + off, base - off]
        }
    }

    pub fn intersect_line(&self, point: Pt, dir: Pt) -> Vec<Pt> {
        let dir = dir.normalized();
        let to_c = self.center - point;
        let t0 = to_c.dot(dir);
        let d2 = to_c.norm_sq() - t0 * t0;
        let h2 = self.radius * self.radius - d2;
        if h2 < -1e-12 * self.radius * self.radius {
            return vec![];
        }
        let h = h2.max(0.0).sqrt();
        if h <= 1e-12 * self.radius {
            vec![point + dir * t0]
        } else {
            vec![point + dir * (t0 - h), point + dir * (t0 + h)]
        }
    }

    /// Crossing angle with another circle at a common point, in [0, pi/2].
    pub fn crossing_angle(&self, o: &Circle) -> Option<f64> {
        let d = self.center.dist(o.center);
        let (r0, r1) = (self.radius, o.radius);
        if d > r0 + r1 || d < (r0 - r1).abs() {
            return None;
        }
        let cos = (r0 * r0 + r1 * r1 - d * d) / (2.0 * r0 * r1);
        Some(cos.clamp(-1.0, 1.0).acos().min(std::f64::consts::PI - cos.clamp(-1.0, 1.0).acos()))
    }
}

/// Circle through three distinct points; a line if they are collinear.
pub fn circle_through(a: Pt, b: Pt, c: Pt) -> Result<GenCircle> {
    let cross = (b - a).cross(c - a);
    let scale = a.dist(b).max(b.dist(c)).max(a.dist(c));
    if scale < 1e-15 {
        return Err(Error::DegenerateTriple);
    }
    if cross.abs() < 1e-13 * scale * scale {
        return Ok(GenCircle::Line {
            point: a,
            dir: (b - a).normalized(),
        });
    }
    let d = 2.0 * cross;
    let asq = a.norm_sq();
    let bsq = b.norm_sq();
    let csq = c.norm_sq();
    let ux = (asq * (b.y - c.y) + bsq * (c.y - a.y) + csq * (a.y - b.y)) / d;
    let uy = (asq * (c.x - b.x) + bsq * (a.x - c.x) + csq * (b.x - a.x)) / d;
    let center = Pt::new(ux, uy);
    Ok(GenCircle::Circle(Circle::new(center, center.dist(a))))
}

/// The unique circle through `a` and `b` orthogonal to `base`.
///
/// Degenerates to the line through `a`,`b` when that line passes through
/// the center of `base`.
pub fn orthogonal_circle_through(base: &Circle, a: Pt, b: Pt) -> Result<GenCircle> {
    // Unknown center C: |C-a|^2 = |C-b|^2  and  |C-O|^2 = r^2 + R^2
    // with r = |C-a|. Both reduce to linear equations in C.
    let o = base.center;
    let rr = base.radius * base.radius;
    // From |C-a|^2 = |C-b|^2:  2 C·(b-a) = |b|^2 - |a|^2
    let e1 = (b - a) * 2.0;
    let k1 = b.norm_sq() - a.norm_sq();
    // From |C-O|^2 - R^2 = |C-a|^2:  2 C·(a-O) = |a|^2 - |O|^2 + R^2... sign care:
    // |C|^2 - 2C·O + |O|^2 - R^2 = |C|^2 - 2C·a + |a|^2
    // => 2C·(a - O) = |a|^2 - |O|^2 + R^2
    let e2 = (a - o) * 2.0;
    let k2 = a.norm_sq() - o.norm_sq() + rr;
    let det = e1.cross(e2);
    let scale = a.dist(b).max(base.radius);
    if det.abs() < 1e-12 * scale * scale {
        return Ok(GenCircle::Line {
            point: a,
            dir: (b - a).normalized(),
        });
    }
    // Solve [e1; e2] C = [k1; k2] by Cramer's rule.
    let cx = (k1 * e2.y - k2 * e1.y) / det;
    let cy = (e1.x * k2 - e2.x * k1) / det;
    let c = Pt::new(cx, cy);
    Ok(GenCircle::Circle(Circle::new(c, c.dist(a))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_circle_is_orthogonal() {
        let base = Circle::new(Pt::new(0.3, -0.2), 2.0);
        let a = base.point_at(0.4);
        let b = base.point_at(1.9);
        match orthogonal_circle_through(&base, a, b).unwrap() {
            GenCircle::Circle(c) => {
                let d2 = c.center.dist(base.center).powi(2);
                assert!((d2 - (c.radius * c.radius + 4.0)).abs() < 1e-9);
                assert!(c.signed_dist(a).abs() < 1e-9);
                assert!(c.signed_dist(b).abs() < 1e-9);
            }
            GenCircle::Line { .. } => panic!("expected a circle"),
        }
        // Diametral points: the orthogonal "circle" is the line through the center.
        let a = base.point_at(0.7);
        let b = base.point_at(0.7 + std::f64::consts::PI);
        assert!(matches!(
            orthogonal_circle_through(&base, a, b).unwrap(),
            GenCircle::Line { .. }
        ));
    }

    #[test]
    fn circle_circle_intersection() {
        let c1 = Circle::new(Pt::new(0.0, 0.0), 1.0);
        let c2 = Circle::new(Pt::new(1.0, 0.0), 1.0);
        let pts = c1.intersect_circle(&c2);
        assert_eq!(pts.len(), 2);
        for p in pts {
            assert!(c1.signed_dist(p).abs() < 1e-12);
            assert!(c2.signed_dist(p).abs() < 1e-12);
        }
        // Tangent circles meet in one point.
        let c3 = Circle::new(Pt::new(2.0, 0.0), 1.0);
        assert_eq!(c1.intersect_circle(&c3).len(), 1);
        assert!(c1.intersect_circle(&Circle::new(Pt::new(5.0, 0.0), 1.0)).is_empty());
    }
}
