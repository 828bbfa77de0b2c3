use super::{wrap_angle, CircleArc, Pt};
use crate::error::Error;
use crate::Result;
use num_complex::Complex64;

/// Displacement of a constant-curvature piece with start heading `h`,
/// turn `tau` and length 1: (e^{i tau} - 1) / (i tau) * e^{i h}.
fn piece_dir(h: f64, tau: f64) -> Complex64 {
    let eh = Complex64::from_polar(1.0, h);
    if tau.abs() < 1e-9 {
        // sinc limit, second order for stability near 0
        eh * Complex64::new(1.0, tau / 2.0)
    } else {
        let num = Complex64::from_polar(1.0, tau) - Complex64::new(1.0, 0.0);
        eh * num / Complex64::new(0.0, tau)
    }
}

/// Smooth pair of arcs from `p0` (heading `h0`) to `p1` (heading `h1`),
/// where the tangent rotates monotonically by `total` (signed; `h1` must
/// equal `h0 + total` up to 2*pi). Both pieces turn in the same direction,
/// so the result is a convex spiral segment — exactly what the orthogonal
/// shape classes (L, U, C, spiral) need.
pub fn biarc(p0: Pt, h0: f64, p1: Pt, h1: f64, total: f64) -> Result<(CircleArc, CircleArc)> {
    debug_assert!(
        wrap_angle(h0 + total - h1).abs() < 1e-9,
        "heading mismatch: {} + {} vs {}",
        h0,
        total,
        h1
    );
    let delta = (p1 - p0).to_complex();
    let solve = |tau1: f64| -> Option<(f64, f64)> {
        let w1 = piece_dir(h0, tau1);
        let w2 = piece_dir(h0 + tau1, total - tau1);
        let det = w1.re * w2.im - w1.im * w2.re;
        if det.abs() < 1e-14 {
            return None;
        }
        let l1 = (delta.re * w2.im - delta.im * w2.re) / det;
        let l2 = (w1.re * delta.im - w1.im * delta.re) / det;
        if l1 > 1e-12 && l2 > 1e-12 {
            Some((l1, l2))
        } else {
            None
        }
    };
    // Scan the split parameter; prefer the most balanced solution
    // (maximize the smaller radius — collapsing one piece to a point is a
    // valid but useless solution of the linear system).
    let min_radius = |tau1: f64, l1: f64, l2: f64| {
        let r1 = if tau1.abs() < 1e-9 { f64::INFINITY } else { l1 / tau1.abs() };
        let t2 = total - tau1;
        let r2 = if t2.abs() < 1e-9 { f64::INFINITY } else { l2 / t2.abs() };
        r1.min(r2)
    };
    // Endpoint splits (one piece exactly straight) are the best answers for
    // L-shapes, so include them.
    let n = 256;
    let mut best: Option<(f64, f64)> = None; // (tau1, score)
    for k in 0..=n {
        let tau1 = total * k as f64 / n as f64;
        if let Some((l1, l2)) = solve(tau1) {
            let score = min_radius(tau1, l1, l2);
            if best.map_or(true, |(_, s)| score > s) {
                best = Some((tau1, score));
            }
        }
    }
    let (mut tau1, mut score) = best.ok_or_else(|| {
        Error::NoSuchArc(format!(
            "no monotone biarc from {p0:?}@{h0} to {p1:?}@{h1} turning {total}"
        ))
    })?;
    let mut step = total.abs() / n as f64;
    for _ in 0..60 {
        let mut improved = false;
        for cand in [tau1 - step * total.signum(), tau1 + step * total.signum()] {
            if !(0.0..=total.abs()).contains(&(cand * total.signum())) {
                continue;
            }
            if let Some((l1, l2)) = solve(cand) {
                let s = min_radius(cand, l1, l2);
                if s > score {
                    tau1 = cand;
                    score = s;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    // Snap near-degenerate splits to an exact straight piece.
    for exact in [0.0, total] {
        if (tau1 - exact).abs() < 1e-6 && solve(exact).is_some() {
            tau1 = exact;
        }
    }
    let (l1, _l2) = solve(tau1).unwrap();
    let join = p0 + Pt::from_complex(piece_dir(h0, tau1).scale(l1));
    let a1 = CircleArc::new(p0, join, tau1);
    let a2 = CircleArc::new(join, p1, total - tau1);
    Ok((a1, a2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rad;
    use std::f64::consts::FRAC_PI_2;

    fn check(p0: Pt, h0: f64, p1: Pt, h1: f64, total: f64) {
        let (a1, a2) = biarc(p0, h0, p1, h1, total).unwrap();
        assert!((a1.p - p0).norm() < 1e-9);
        assert!((a2.q - p1).norm() < 1e-7, "endpoint error {:?}", a2.q - p1);
        assert!((a1.tangent_at_p() - Pt::dir(h0)).norm() < 1e-9);
        assert!((a2.tangent_at_q() - Pt::dir(h1)).norm() < 1e-7);
        // Smooth join.
        assert!((a1.q - a2.p).norm() < 1e-9);
        assert!((a1.tangent_at_q() - a2.tangent_at_p()).norm() < 1e-9);
    }

    #[test]
    fn l_shape_unequal_legs() {
        // Up 1, east 3: quarter turn clockwise... (heading N to heading E = -90°).
        check(Pt::new(0.0, 0.0), FRAC_PI_2, Pt::new(3.0, 1.0), 0.0, -FRAC_PI_2);
        check(Pt::new(0.0, 0.0), FRAC_PI_2, Pt::new(0.5, 4.0), 0.0, -FRAC_PI_2);
    }

    #[test]
    fn u_shape() {
        // Down a, east m, up b: heading S to heading N turning left (+180°).
        check(
            Pt::new(0.0, 0.0),
            -FRAC_PI_2,
            Pt::new(2.0, 1.0),
            FRAC_PI_2,
            rad(180.0),
        );
        check(
            Pt::new(0.0, 0.0),
            -FRAC_PI_2,
            Pt::new(1.0, -2.0),
            FRAC_PI_2,
            rad(180.0),
        );
    }

    #[test]
    fn three_quarter_spiral() {
        // Heading W, turning clockwise 270° to heading S.
        check(
            Pt::new(0.0, 0.0),
            rad(180.0),
            Pt::new(1.0, 3.0),
            rad(-90.0),
            rad(-270.0),
        );
    }

    #[test]
    fn convexity_keeps_l_biarc_in_corner_box() {
        // The monotone-turn biarc for an L stays inside the axis box.
        let (a1, a2) = biarc(
            Pt::new(0.0, 0.0),
            FRAC_PI_2,
            Pt::new(4.0, 1.5),
            0.0,
            -FRAC_PI_2,
        )
        .unwrap();
        for arc in [a1, a2] {
            let (lo, hi) = arc.bbox();
            assert!(lo.x >= -1e-9 && lo.y >= -1e-9, "bbox {lo:?}");
            assert!(hi.x <= 4.0 + 1e-9 && hi.y <= 1.5 + 1e-9, "bbox {hi:?}");
        }
    }
}
