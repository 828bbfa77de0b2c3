use super::{Circle, CircleArc, Pt};

#[derive(Debug, Clone, Copy)]
pub struct Intersection {
    pub point: Pt,
    pub tangential: bool,
}

fn on_segment(a: &CircleArc, p: Pt, tol: f64) -> bool {
    let d = a.q - a.p;
    let len2 = d.norm_sq();
    let t = (p - a.p).dot(d) / len2;
    if !(-tol..=1.0 + tol).contains(&t) {
        return false;
    }
    (p - a.p).cross(d).abs() / len2.sqrt() <= tol
}

/// All intersection points of two arcs, tangential contacts flagged.
/// Shared endpoints are reported like any other contact; callers that want
/// to ignore endpoint touching filter by distance to the endpoints.
///
/// Arcs that are numerically straight (|turn| < 1e-7, sagitta below every
/// tolerance in use) are intersected as exact segments: their supporting
/// circles have radii so large that the circle-circle arithmetic loses all
/// precision.
pub fn arc_intersections(a: &CircleArc, b: &CircleArc, tol: f64) -> Vec<Intersection> {
    let a = &straighten(*a);
    let b = &straighten(*b);
    let scale = a
        .p
        .dist(a.q)
        .max(b.p.dist(b.q))
        .max(a.length())
        .max(b.length());
    let tol = tol * scale.max(1e-12);
    let mut out: Vec<Intersection> = Vec::new();
    let mut push = |p: Pt, tangential: bool, out: &mut Vec<Intersection>| {
        if out.iter().all(|i| i.point.dist(p) > 10.0 * tol) {
            out.push(Intersection { point: p, tangential });
        }
    };
    match (a.circle(), b.circle()) {
        (None, None) => {
            // Segment-segment.
            let d1 = a.q - a.p;
            let d2 = b.q - b.p;
            let den = d1.cross(d2);
            if den.abs() < 1e-14 * scale * scale {
                // Parallel: overlapping collinear segments touch in a range;
                // report endpoint containments.
                for p in [a.p, a.q] {
                    if on_segment(b, p, tol) {
                        push(p, true, &mut out);
                    }
                }
                for p in [b.p, b.q] {
                    if on_segment(a, p, tol) {
                        push(p, true, &mut out);
                    }
                }
            } else {
                let t = (b.p - a.p).cross(d2) / den;
                let s = (b.p - a.p).cross(d1) / den;
                let tt = tol / d1.norm();
                let ts = tol / d2.norm();
                if (-tt..=1.0 + tt).contains(&t) && (-ts..=1.0 + ts).contains(&s) {
                    push(a.p + d1 * t, false, &mut out);
                }
            }
        }
        (Some(_), None) => return arc_intersections(b, a, tol / scale.max(1e-12)),
        (None, Some(cb)) => {
            // Segment (a) against circle of b.
            let pts = cb.intersect_circle_line(a.p, a.q - a.p);
            let tangential = pts.len() == 1;
            for p in pts {
                if on_segment(a, p, tol) && b.covers_angle((p - cb.center).angle(), tol / cb.radius)
                {
                    push(p, tangential, &mut out);
                }
            }
        }
        (Some(ca), Some(cb)) => {
            let cc = ca.center.dist(cb.center);
            if cc < 1e-12 * scale && (ca.radius - cb.radius).abs() < tol {
                // Same supporting circle: overlap endpoints.
                for p in [a.p, a.q] {
                    if b.covers_angle((p - cb.center).angle(), tol / cb.radius) {
                        push(p, true, &mut out);
                    }
                }
                for p in [b.p, b.q] {
                    if a.covers_angle((p - ca.center).angle(), tol / ca.radius) {
                        push(p, true, &mut out);
                    }
                }
            } else {
                let pts = ca.intersect_circle(&cb);
                let tangential = pts.len() == 1;
                for p in pts {
                    let ok_a = a.covers_angle((p - ca.center).angle(), tol / ca.radius);
                    let ok_b = b.covers_angle((p - cb.center).angle(), tol / cb.radius);
                    if ok_a && ok_b {
                        push(p, tangential, &mut out);
                    }
                }
            }
        }
    }
    out
}

trait CircleLineExt {
    fn intersect_circle_line(&self, p: Pt, d: Pt) -> Vec<Pt>;
}

impl CircleLineExt for Circle {
    fn intersect_circle_line(&self, p: Pt, d: Pt) -> Vec<Pt> {
        self.intersect_line(p, d)
    }
}

fn straighten(a: CircleArc) -> CircleArc {
    if a.turn.abs() < 1e-7 {
        CircleArc::segment(a.p, a.q)
    } else {
        a
    }
}

/// Minimum distance between two arcs (0 when they intersect).
pub fn arc_arc_distance(a: &CircleArc, b: &CircleArc) -> f64 {
    let a = &straighten(*a);
    let b = &straighten(*b);
    if !arc_intersections(a, b, 1e-12).is_empty() {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for p in [a.p, a.q, a.midpoint()] {
        best = best.min(b.distance_to_point(p));
    }
    for p in [b.p, b.q, b.midpoint()] {
        best = best.min(a.distance_to_point(p));
    }
    // Center-line feet between the supporting circles.
    if let (Some(ca), Some(cb)) = (a.circle(), b.circle()) {
        let dir = (cb.center - ca.center).normalized();
        for cand in [
            ca.center + dir * ca.radius,
            ca.center - dir * ca.radius,
        ] {
            if a.covers_angle((cand - ca.center).angle(), 0.0) {
                best = best.min(b.distance_to_point(cand));
            }
        }
        for cand in [
            cb.center + dir * cb.radius,
            cb.center - dir * cb.radius,
        ] {
            if b.covers_angle((cand - cb.center).angle(), 0.0) {
                best = best.min(a.distance_to_point(cand));
            }
        }
    }
    // Perpendicular feet of endpoints already covered by distance_to_point.
    // Sampled safety net for the remaining configurations.
    for k in 0..33 {
        let t = k as f64 / 32.0;
        best = best.min(b.distance_to_point(a.point_at(t)));
        best = best.min(a.distance_to_point(b.point_at(t)));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_halves_vs_diameter() {
        // Unit circle upper half against the horizontal diameter: 2 contacts.
        let upper = CircleArc::new(Pt::new(1.0, 0.0), Pt::new(-1.0, 0.0), std::f64::consts::PI);
        let diam = CircleArc::segment(Pt::new(-1.0, 0.0), Pt::new(1.0, 0.0));
        let hits = arc_intersections(&upper, &diam, 1e-9);
        assert_eq!(hits.len(), 2);
    }

    #[test]
    fn concentric_arcs_disjoint() {
        let a = CircleArc::new(Pt::new(1.0, 0.0), Pt::new(-1.0, 0.0), std::f64::consts::PI);
        let b = CircleArc::new(Pt::new(2.0, 0.0), Pt::new(-2.0, 0.0), std::f64::consts::PI);
        assert!(arc_intersections(&a, &b, 1e-9).is_empty());
        let d = arc_arc_distance(&a, &b);
        assert!((d - 1.0).abs() < 1e-6, "distance {d}");
    }

    #[test]
    fn dense_sampling_agreement() {
        // Randomized arcs: intersection existence agrees with dense sampling.
        let mut seed = 7u64;
        let mut rnd = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..120 {
            let a = CircleArc::new(
                Pt::new(rnd() * 2.0, rnd() * 2.0),
                Pt::new(rnd() * 2.0, rnd() * 2.0),
                (rnd() - 0.5) * 5.0,
            );
            let b = CircleArc::new(
                Pt::new(rnd() * 2.0, rnd() * 2.0),
                Pt::new(rnd() * 2.0, rnd() * 2.0),
                (rnd() - 0.5) * 5.0,
            );
            if a.p.dist(a.q) < 0.1 || b.p.dist(b.q) < 0.1 {
                continue;
            }
            let analytic = !arc_intersections(&a, &b, 1e-9).is_empty();
            // Dense oracle: min pointwise distance over 10^4 samples.
            let mut dmin = f64::INFINITY;
            for i in 0..100 {
                let p = a.point_at(i as f64 / 99.0);
                for j in 0..100 {
                    dmin = dmin.min(p.dist(b.point_at(j as f64 / 99.0)));
                }
            }
            if analytic {
                assert!(dmin < 0.05, "claimed intersection but sampled distance {dmin}");
            } else {
                assert!(dmin > 1e-7, "missed an intersection: sampled distance {dmin}");
            }
        }
    }
}
