use super::{ccw_gap, wrap_angle, Circle, Pt};
use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// A directed circular arc from `p` to `q`.
///
/// `turn` is the total signed rotation of the tangent direction along the
/// arc (positive = counter-clockwise). `turn == 0` is a straight segment,
/// `|turn| > PI` a major arc; `|turn| < TAU` always, so an arc is a proper
/// subset of its circle. This pins down major arcs, which the plain signed
/// curvature cannot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleArc {
    pub p: Pt,
    pub q: Pt,
    pub turn: f64,
}

impl CircleArc {
    pub fn new(p: Pt, q: Pt, turn: f64) -> Self {
        debug_assert!(turn.abs() < TAU, "arc must be less than a full circle");
        CircleArc { p, q, turn }
    }

    pub fn segment(p: Pt, q: Pt) -> Self {
        CircleArc { p, q, turn: 0.0 }
    }

    pub fn is_segment(&self) -> bool {
        self.turn.abs() < 1e-13
    }

    /// Signed curvature; positive bends left of the p→q direction.
    pub fn curvature(&self) -> f64 {
        2.0 * (self.turn / 2.0).sin() / self.p.dist(self.q)
    }

    pub fn radius(&self) -> f64 {
        1.0 / self.curvature().abs()
    }

    pub fn center(&self) -> Option<Pt> {
        if self.is_segment() {
            None
        } else {
            let k = self.curvature();
            Some(self.p + self.tangent_at_p().rot90() / k)
        }
    }

    pub fn circle(&self) -> Option<Circle> {
        self.center().map(|c| Circle::new(c, self.radius()))
    }

    /// Unit tangent at `p`, pointing into the arc.
    pub fn tangent_at_p(&self) -> Pt {
        (self.q - self.p).normalized().rotated(-self.turn / 2.0)
    }

    /// Unit tangent at `q`, pointing out of the arc (direction of travel).
    pub fn tangent_at_q(&self) -> Pt {
        (self.q - self.p).normalized().rotated(self.turn / 2.0)
    }

    /// Tangent pointing away from the given endpoint along the arc.
    pub fn outward_tangent_at(&self, endpoint: Pt) -> Pt {
        if endpoint.dist(self.p) <= endpoint.dist(self.q) {
            self.tangent_at_p()
        } else {
            -self.tangent_at_q()
        }
    }

    pub fn reversed(&self) -> CircleArc {
        CircleArc::new(self.q, self.p, -self.turn)
    }

    pub fn length(&self) -> f64 {
        let d = self.p.dist(self.q);
        if self.is_segment() {
            d
        } else {
            self.radius() * self.turn.abs()
        }
    }

    /// Point at parameter `t` in [0,1] (uniform in arc length).
    ///
    /// Chord-frame formula: p + |pq|·sin(t·h)/sin(h)·dir(chord + (t−1)·h)
    /// with h = turn/2. Unlike rotating about the center this stays fully
    /// accurate for nearly straight arcs (whose centers are enormous).
    pub fn point_at(&self, t: f64) -> Pt {
        let h = self.turn / 2.0;
        let chord = self.q - self.p;
        if h.abs() < 1e-300 {
            return self.p.lerp(self.q, t);
        }
        let ratio = if h.abs() < 1e-6 {
            // sin(t h)/sin(h) with series-stable evaluation.
            t * (1.0 - (t * h) * (t * h) / 6.0) / (1.0 - h * h / 6.0)
        } else {
            (t * h).sin() / h.sin()
        };
        let dir = Pt::dir(chord.angle() + (t - 1.0) * h);
        self.p + dir * (chord.norm() * ratio)
    }

    /// Unit tangent (direction of travel) at parameter `t`.
    pub fn tangent_at(&self, t: f64) -> Pt {
        self.tangent_at_p().rotated(t * self.turn)
    }

    pub fn midpoint(&self) -> Pt {
        self.point_at(0.5)
    }

    /// Sub-arc between parameters `t0 <= t1`.
    pub fn sub_arc(&self, t0: f64, t1: f64) -> CircleArc {
        CircleArc::new(self.point_at(t0), self.point_at(t1), (t1 - t0) * self.turn)
    }

    /// Center angles covered by the arc: start angle and signed sweep.
    pub fn angular_span(&self) -> Option<(f64, f64)> {
        self.center().map(|c| ((self.p - c).angle(), self.turn))
    }

    /// Whether the center angle `theta` lies on the arc (within `slack` radians).
    pub fn covers_angle(&self, theta: f64, slack: f64) -> bool {
        match self.angular_span() {
            None => false,
            Some((a0, sweep)) => {
                if sweep >= 0.0 {
                    ccw_gap(a0 - slack, theta) <= sweep + 2.0 * slack
                } else {
                    ccw_gap(theta, a0 + slack) <= -sweep + 2.0 * slack
                }
            }
        }
    }

    /// Parameter of the closest on-arc point to `x`.
    pub fn closest_t(&self, x: Pt) -> f64 {
        if self.is_segment() {
            let d = self.q - self.p;
            ((x - self.p).dot(d) / d.norm_sq()).clamp(0.0, 1.0)
        } else {
            let c = self.center().unwrap();
            let a0 = (self.p - c).angle();
            let ax = (x - c).angle();
            let t = if self.turn >= 0.0 {
                ccw_gap(a0, ax) / self.turn
            } else {
                -ccw_gap(ax, a0) / self.turn
            };
            if t <= 1.0 {
                t
            } else {
                // Off the arc: snap to the closer endpoint.
                let half = 1.0 + (TAU / self.turn.abs() - 1.0) / 2.0;
                if t < half {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn distance_to_point(&self, x: Pt) -> f64 {
        x.dist(self.point_at(self.closest_t(x)))
    }

    pub fn bbox(&self) -> (Pt, Pt) {
        let mut lo = Pt::new(self.p.x.min(self.q.x), self.p.y.min(self.q.y));
        let mut hi = Pt::new(self.p.x.max(self.q.x), self.p.y.max(self.q.y));
        if let Some(c) = self.center() {
            let r = self.radius();
            for (theta, dx, dy) in [
                (0.0, r, 0.0),
                (PI / 2.0, 0.0, r),
                (PI, -r, 0.0),
                (-PI / 2.0, 0.0, -r),
            ] {
                if self.covers_angle(theta, 0.0) {
                    let pt = Pt::new(c.x + dx, c.y + dy);
                    lo = Pt::new(lo.x.min(pt.x), lo.y.min(pt.y));
                    hi = Pt::new(hi.x.max(pt.x), hi.y.max(pt.y));
                }
            }
        }
        (lo, hi)
    }

    /// Unique arc from `p` to `q` leaving `p` in direction `tangent`.
    ///
    /// Fails when the tangent points straight back along the chord (the
    /// connection would pass through infinity).
    pub fn from_tangent(p: Pt, q: Pt, tangent: Pt) -> Result<CircleArc> {
        if p.dist(q) < 1e-15 {
            return Err(Error::NoSuchArc("coincident endpoints".into()));
        }
        let half = wrap_angle((q - p).angle() - tangent.angle());
        if (half.abs() - PI).abs() < 1e-12 {
            return Err(Error::NoSuchArc(
                "tangent opposes the chord (arc through infinity)".into(),
            ));
        }
        Ok(CircleArc::new(p, q, 2.0 * half))
    }

    /// Arc from `p` to `q` passing through `via`.
    pub fn through(p: Pt, via: Pt, q: Pt) -> Result<CircleArc> {
        let cross = (via - p).cross(q - via);
        let d_pq = p.dist(q);
        let scale = d_pq.max(p.dist(via)).max(via.dist(q));
        if cross.abs() < 1e-13 * scale * scale {
            // Collinear: `via` must lie between the endpoints.
            let t = (via - p).dot(q - p) / (q - p).norm_sq();
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::NoSuchArc("collinear arc through infinity".into()));
            }
            return Ok(CircleArc::segment(p, q));
        }
        let c = circumcenter(p, via, q)?;
        let a_p = (p - c).angle();
        let a_q = (q - c).angle();
        let sweep = if cross > 0.0 {
            ccw_gap(a_p, a_q)
        } else {
            -ccw_gap(a_q, a_p)
        };
        Ok(CircleArc::new(p, q, sweep))
    }

    /// Tangent-consistency residual (should be ~0 for every valid arc).
    pub fn tangent_residual(&self) -> f64 {
        let t0 = self.tangent_at(0.0);
        let t1 = self.tangent_at(1.0);
        (t0 - self.tangent_at_p()).norm() + (t1 - self.tangent_at_q()).norm()
    }
}

fn circumcenter(a: Pt, b: Pt, c: Pt) -> Result<Pt> {
    let d = 2.0 * ((b - a).cross(c - a));
    if d.abs() < 1e-18 {
        return Err(Error::NoSuchArc("degenerate circumcircle".into()));
    }
    let asq = a.norm_sq();
    let bsq = b.norm_sq();
    let csq = c.norm_sq();
    let ux = (asq * (b.y - c.y) + bsq * (c.y - a.y) + csq * (a.y - b.y)) / d;
    let uy = (asq * (c.x - b.x) + bsq * (a.x - c.x) + csq * (b.x - a.x)) / d;
    Ok(Pt::new(ux, uy))
}

/// Bisector of the lens bounded by arcs `e1` and `e2` (both oriented u→v):
/// the unique arc u→v making equal angles with both at both endpoints,
/// running inside the lens.
pub fn bisector_arc(e1: &CircleArc, e2: &CircleArc) -> Result<CircleArc> {
    let u = e1.p;
    let v = e1.q;
    if u.dist(e2.p) > 1e-9 * u.dist(v) || v.dist(e2.q) > 1e-9 * u.dist(v) {
        return Err(Error::NoSuchArc("lens arcs do not share endpoints".into()));
    }
    let t1 = e1.tangent_at_p().angle();
    let t2 = e2.tangent_at_p().angle();
    let inner = (e1.midpoint() + e2.midpoint()) * 0.5;
    // Two candidate bisecting directions at u; pick the one whose arc stays
    // inside the lens (closer to the between-arcs midpoint).
    let g = ccw_gap(t1, t2);
    let cand = [t1 + g / 2.0, t1 + g / 2.0 + PI];
    let mut best: Option<(f64, CircleArc)> = None;
    for dir in cand {
        if let Ok(arc) = CircleArc::from_tangent(u, v, Pt::dir(dir)) {
            let score = arc.midpoint().dist(inner);
            if best.as_ref().map_or(true, |(s, _)| score < *s) {
                best = Some((score, arc));
            }
        }
    }
    best.map(|(_, a)| a)
        .ok_or_else(|| Error::NoSuchArc("no bisector arc".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rad;

    #[test]
    fn segment_basics() {
        let a = CircleArc::segment(Pt::new(0.0, 0.0), Pt::new(2.0, 0.0));
        assert!(a.is_segment());
        assert!((a.length() - 2.0).abs() < 1e-12);
        assert!((a.tangent_at_p() - Pt::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(a.midpoint(), Pt::new(1.0, 0.0));
    }

    #[test]
    fn semicircle_geometry() {
        // Up from the origin, clockwise through (1,1), down to (2,0).
        let a = CircleArc::from_tangent(Pt::new(0.0, 0.0), Pt::new(2.0, 0.0), Pt::new(0.0, 1.0))
            .unwrap();
        assert!((a.turn + PI).abs() < 1e-12);
        assert!((a.center().unwrap() - Pt::new(1.0, 0.0)).norm() < 1e-12);
        assert!((a.midpoint() - Pt::new(1.0, 1.0)).norm() < 1e-12);
        assert!((a.tangent_at_q() - Pt::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn reversal_negates_turn_and_curvature() {
        let a = CircleArc::new(Pt::new(0.0, 0.0), Pt::new(1.0, 2.0), 1.3);
        let r = a.reversed();
        assert_eq!(r.turn, -a.turn);
        assert!((a.curvature() + r.curvature()).abs() < 1e-12);
        assert!((a.midpoint() - r.midpoint()).norm() < 1e-12);
        assert!((a.tangent_at_p() + r.tangent_at_q()).norm() < 1e-12);
    }

    #[test]
    fn three_point_reconstruction() {
        let a = CircleArc::new(Pt::new(-1.0, 0.5), Pt::new(2.0, 1.0), 2.8);
        let b = CircleArc::through(a.p, a.midpoint(), a.q).unwrap();
        assert!((a.turn - b.turn).abs() < 1e-9);
        // Major arc survives the round trip.
        let m = CircleArc::new(Pt::new(0.0, 0.0), Pt::new(1.0, 0.0), rad(300.0));
        let m2 = CircleArc::through(m.p, m.midpoint(), m.q).unwrap();
        assert!((m.turn - m2.turn).abs() < 1e-9);
    }

    #[test]
    fn tangent_consistency_random() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut rnd = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let p = Pt::new(rnd() * 4.0 - 2.0, rnd() * 4.0 - 2.0);
            let q = Pt::new(rnd() * 4.0 - 2.0, rnd() * 4.0 - 2.0);
            if p.dist(q) < 1e-3 {
                continue;
            }
            let a = CircleArc::new(p, q, (rnd() - 0.5) * 2.0 * 6.0_f64.min(TAU - 1e-6));
            assert!(a.tangent_residual() < 1e-12);
            assert!((a.point_at(0.0) - p).norm() < 1e-12);
            assert!((a.point_at(1.0) - q).norm() < 1e-9);
        }
    }

    #[test]
    fn symmetric_lens_bisector_is_straight() {
        // Lens symmetric about the x-axis: bisector is the x-axis segment.
        let u = Pt::new(0.0, 0.0);
        let v = Pt::new(2.0, 0.0);
        let e1 = CircleArc::from_tangent(u, v, Pt::dir(rad(45.0))).unwrap();
        let e2 = CircleArc::from_tangent(u, v, Pt::dir(rad(-45.0))).unwrap();
        let b = bisector_arc(&e1, &e2).unwrap();
        assert!(b.is_segment(), "bisector should be the x-axis: {b:?}");
        // Equal angles at both endpoints.
        let au = ccw_gap(b.tangent_at_p().angle(), e1.tangent_at_p().angle());
        let av = ccw_gap(e2.tangent_at_p().angle(), b.tangent_at_p().angle());
        assert!((au - av).abs() < 1e-9);
    }
}
