//! Independent checker for drawings. Consumes only drawing geometry plus
//! the combinatorial embedding it claims to realize; never trusts solver
//! internals. Angle residuals are reported in degrees.

use crate::drawing::Drawing;
use crate::geom::{arc_arc_distance, arc_intersections, ccw_gap, deg, Pt};
#[allow(unused_imports)]
use crate::geom::rad;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerifyMode {
    Lombardi,
    TwoLombardi,
    /// ε in degrees.
    Eps(f64),
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {:<22} residual {:9.3e}  {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.residual,
                    c.detail
                )
            })
            .collect()
    }

    pub fn worst(&self, name: &str) -> f64 {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.residual)
            .unwrap_or(f64::NAN)
    }
}

/// Angular resolution slack in degrees (comparisons near ties).
const ANGLE_SLACK_DEG: f64 = 1e-6;
/// Tangency tolerance: tangent-direction mismatch in radians (the
/// dimensionless measure; resolution bounds are the degree-valued ones).
const TANGENT_TOL: f64 = 1e-9;
/// Relative endpoint-gap tolerance.
const ENDPOINT_TOL: f64 = 1e-9;
/// Endpoint trim radius for crossing checks, relative to the diameter.
const TRIM: f64 = 1e-6;

pub fn verify(d: &Drawing, mode: VerifyMode) -> Result<Report> {
    let mut checks = Vec::new();
    let g = &d.graph;
    let diameter = d.diameter().max(1e-300);

    // (a) chain continuity and smoothness.
    {
        let mut worst_gap = 0.0f64;
        let mut worst_tan = 0.0f64;
        let mut detail = String::new();
        for e in &d.edges {
            let (u, v) = (g.vertex(e.darts.0), g.vertex(e.darts.1));
            let start_gap = e.arcs[0].p.dist(d.positions[u]) / diameter;
            let end_gap = e.arcs.last().unwrap().q.dist(d.positions[v]) / diameter;
            worst_gap = worst_gap.max(start_gap).max(end_gap);
            for w in e.arcs.windows(2) {
                let gap = w[0].q.dist(w[1].p) / diameter;
                let tan = ccw_angle_between(w[0].tangent_at_q(), w[1].tangent_at_p());
                worst_gap = worst_gap.max(gap);
                worst_tan = worst_tan.max(tan);
                if (gap > ENDPOINT_TOL || tan > TANGENT_TOL) && detail.is_empty() {
                    detail = format!("edge at dart {}", e.darts.0);
                }
            }
        }
        checks.push(CheckResult {
            name: "chain-continuity",
            pass: worst_gap <= ENDPOINT_TOL && worst_tan <= TANGENT_TOL,
            residual: worst_gap.max(worst_tan),
            detail,
        });
    }

    // Per-vertex outgoing tangents in dart order.
    let tangents: Vec<Vec<(usize, f64)>> = (0..g.n_vertices())
        .map(|v| {
            g.darts_of(v)
                .into_iter()
                .map(|dart| (dart, d.tangent_of_dart(dart).angle()))
                .collect()
        })
        .collect();

    // (b) angular resolution.
    {
        let mut worst = 0.0f64;
        let mut detail = String::new();
        for v in 0..g.n_vertices() {
            let star = &tangents[v];
            let k = star.len();
            for i in 0..k {
                let gap = deg(ccw_gap(star[i].1, star[(i + 1) % k].1));
                let dev = match mode {
                    VerifyMode::Lombardi | VerifyMode::TwoLombardi => (gap - 360.0 / k as f64).abs(),
                    VerifyMode::Eps(eps) => {
                        let lo = 90.0 - eps;
                        let hi = 90.0 + eps;
                        (lo - gap).max(gap - hi).max(0.0)
                    }
                };
                if dev > worst {
                    worst = dev;
                    detail = format!("vertex {v}, gap {gap:.9}");
                }
            }
        }
        let tol = match mode {
            VerifyMode::Eps(_) => ANGLE_SLACK_DEG,
            _ => ANGLE_SLACK_DEG,
        };
        checks.push(CheckResult {
            name: "angular-resolution",
            pass: worst <= tol,
            residual: worst,
            detail,
        });
    }

    // (c) opposite tangency (4-regular vertices only).
    {
        let mut worst = 0.0f64;
        let mut detail = String::new();
        for v in 0..g.n_vertices() {
            let star = &tangents[v];
            if star.len() != 4 {
                continue;
            }
            for i in 0..2 {
                let a = star[i].1;
                let b = star[i + 2].1;
                let dev = (crate::geom::wrap_angle(b - a - std::f64::consts::PI)).abs();
                if dev > worst {
                    worst = dev;
                    detail = format!("vertex {v}");
                }
            }
        }
        checks.push(CheckResult {
            name: "opposite-tangency",
            pass: worst <= TANGENT_TOL,
            residual: worst,
            detail,
        });
    }

    // (d) pairwise crossings, endpoint contacts trimmed away.
    {
        let pieces = d.pieces();
        let trim = TRIM * diameter;
        let mut crossings = 0usize;
        let mut detail = String::new();
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let (ei, ai, a) = &pieces[i];
                let (ej, aj, b) = &pieces[j];
                if ei == ej && (*ai as i64 - *aj as i64).abs() <= 1 {
                    continue; // consecutive pieces of one chain share a joint
                }
                for hit in arc_intersections(a, b, 1e-9) {
                    let near_shared = [a.p, a.q]
                        .iter()
                        .any(|&pa| [b.p, b.q].iter().any(|&pb| pa.dist(pb) < trim))
                        && [a.p, a.q, b.p, b.q].iter().any(|&e| e.dist(hit.point) < trim);
                    if near_shared {
                        continue;
                    }
                    crossings += 1;
                    if detail.is_empty() {
                        detail = format!(
                            "edges {}/{} cross near ({:.4},{:.4})",
                            ei, ej, hit.point.x, hit.point.y
                        );
                    }
                }
            }
        }
        checks.push(CheckResult {
            name: "arc-crossings",
            pass: crossings == 0,
            residual: crossings as f64,
            detail,
        });
    }

    // (e) rotation order of tangents matches the rotation system.
    {
        let mut ok = true;
        let mut detail = String::new();
        for v in 0..g.n_vertices() {
            let star = &tangents[v];
            let k = star.len();
            if k <= 2 {
                continue;
            }
            // The dart order must be a counter-clockwise cyclic ordering:
            // equivalent to: going around the star, the total ccw gap is
            // exactly one full turn.
            let total: f64 = (0..k)
                .map(|i| ccw_gap(star[i].1, star[(i + 1) % k].1))
                .sum();
            if (total - std::f64::consts::TAU).abs() > 1e-6 {
                ok = false;
                if detail.is_empty() {
                    detail = format!("vertex {v}: tangent order differs from rotation system");
                }
            }
        }
        checks.push(CheckResult {
            name: "rotation-order",
            pass: ok,
            residual: if ok { 0.0 } else { 1.0 },
            detail,
        });
    }

    // (f) face structure: with matching rotations and a valid sphere
    // embedding the face orbits coincide; re-run the Euler validation.
    {
        let v = g.n_vertices() as i64;
        let e = g.n_edges() as i64;
        let f = g.faces().len() as i64;
        let ok = v - e + f == 2;
        checks.push(CheckResult {
            name: "face-structure",
            pass: ok,
            residual: (v - e + f - 2) as f64,
            detail: format!("V-E+F = {}-{}+{}", v, e, f),
        });
    }

    // (g) arc count per mode.
    {
        let bound = match mode {
            VerifyMode::Lombardi | VerifyMode::Eps(_) => 1,
            VerifyMode::TwoLombardi => 2,
        };
        let worst = d.edges.iter().map(|e| e.arcs.len()).max().unwrap_or(0);
        checks.push(CheckResult {
            name: "arc-count",
            pass: worst <= bound,
            residual: worst as f64,
            detail: format!("max {worst} arcs per edge (bound {bound})"),
        });
    }

    Ok(Report { checks })
}

fn ccw_angle_between(a: Pt, b: Pt) -> f64 {
    crate::geom::wrap_angle(b.angle() - a.angle()).abs()
}

/// Minimum distance between arc pieces of non-adjacent edges (edges not
/// sharing a vertex). Zero only when the drawing self-touches.
pub fn clearance(d: &Drawing) -> f64 {
    let g = &d.graph;
    let mut best = f64::INFINITY;
    for i in 0..d.edges.len() {
        for j in i + 1..d.edges.len() {
            let (e1, e2) = (&d.edges[i], &d.edges[j]);
            let vs1 = [g.vertex(e1.darts.0), g.vertex(e1.darts.1)];
            let vs2 = [g.vertex(e2.darts.0), g.vertex(e2.darts.1)];
            if vs1.iter().any(|v| vs2.contains(v)) {
                continue;
            }
            for a in &e1.arcs {
                for b in &e2.arcs {
                    best = best.min(arc_arc_distance(a, b));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::theta4_drawing;

    #[test]
    fn base_drawing_is_clean_lombardi() {
        let d = theta4_drawing(0.0);
        let r = verify(&d, VerifyMode::Lombardi).unwrap();
        assert!(r.pass(), "{:#?}", r.lines());
    }

    #[test]
    fn eps_fixture_verifies_at_its_eps() {
        let d = theta4_drawing(20.0);
        let r = verify(&d, VerifyMode::Eps(20.0)).unwrap();
        assert!(r.pass(), "{:#?}", r.lines());
        // And fails as strict Lombardi.
        let r0 = verify(&d, VerifyMode::Lombardi).unwrap();
        assert!(!r0.pass());
        // Opposite tangency still exact.
        assert!(r.worst("opposite-tangency") < 1e-9);
    }

    #[test]
    fn perturbation_breaks_continuity() {
        let mut d = theta4_drawing(0.0);
        d.positions[1] = d.positions[1] + crate::geom::Pt::new(1e-3, 0.0);
        let r = verify(&d, VerifyMode::Lombardi).unwrap();
        assert!(!r.pass());
        assert!(r.checks.iter().any(|c| c.name == "chain-continuity" && !c.pass));
    }

    #[test]
    fn injected_third_arc_fails_count() {
        let mut d = theta4_drawing(0.0);
        let arc = d.edges[0].arcs[0];
        let mid = arc.midpoint();
        d.edges[0].arcs = vec![arc.sub_arc(0.0, 0.4), arc.sub_arc(0.4, 0.7), arc.sub_arc(0.7, 1.0)];
        let _ = mid;
        let r = verify(&d, VerifyMode::TwoLombardi).unwrap();
        assert!(r.checks.iter().any(|c| c.name == "arc-count" && !c.pass));
        // The chain itself remains smooth.
        assert!(r.checks.iter().any(|c| c.name == "chain-continuity" && c.pass));
    }

    #[test]
    fn clearance_positive_for_base() {
        // theta4 has only two vertices, so all edges are adjacent; build a
        // fake second drawing displaced far away is overkill — instead use
        // sub-arcs of one edge as a smoke check through arc distances.
        let d = theta4_drawing(0.0);
        assert!(clearance(&d).is_infinite() || clearance(&d) > 0.0);
    }
}
