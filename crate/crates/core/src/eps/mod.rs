//! Plane ε-angle Lombardi drawings: packing-based ε-regular drawings,
//! ε-aware composition operators, the lens-extension search, base cases,
//! and the recursive construction covering every biconnected 4-regular
//! plane multigraph.
//!
//! Throughout, ε is measured in degrees. An ε-angle drawing keeps opposite
//! edges exactly tangent and adjacent angles within [90°−ε, 90°+ε]; the
//! regular variant hits 90°±ε exactly.

mod extension;
mod recursion;

pub use extension::lens_extension_eps;
pub use recursion::draw_eps;

use crate::drawing::{Drawing, EpsDrawing};
use crate::error::Error;
use crate::graph::{Dart, PlaneMultigraph};
use crate::lombardi::{knot_sum_drawings, lens_multiply_drawing};
use crate::Result;

/// Direct the edges of a 4-regular plane multigraph so that every vertex
/// has two opposite incoming and two opposite outgoing edges: orient the
/// boundary of every color-0 face counter-clockwise. Returns per-dart
/// flags: `out[d]` is true when the edge leaves `vertex(d)` along `d`.
pub fn orient_medial(g: &PlaneMultigraph) -> Result<Vec<bool>> {
    let colors = g.checkerboard()?;
    let (_, face_of) = g.face_of_darts();
    // A dart's face (on its right) has color 1 exactly when walking along
    // the dart keeps the color-0 face on the left, i.e. goes
    // counter-clockwise around that face.
    Ok((0..g.n_darts())
        .map(|d| colors[face_of[d]] == 1)
        .collect())
}

/// Packing-based ε-regular drawing for graphs whose primal or dual is
/// simple: every arc meets its lens-region circles at 45°±ε/2, rotated
/// consistently with the medial orientation, so all vertex angles are
/// exactly 90°±ε.
pub fn draw_eps_regular(g: &PlaneMultigraph, eps_deg: f64) -> Result<EpsDrawing> {
    draw_eps_regular_oriented(g, eps_deg, false)
}

/// As [`draw_eps_regular`], optionally with all edge directions inverted
/// (flips which angle of each crossing is 90°+ε).
pub fn draw_eps_regular_oriented(
    g: &PlaneMultigraph,
    eps_deg: f64,
    invert: bool,
) -> Result<EpsDrawing> {
    if !(0.0..90.0).contains(&eps_deg) {
        return Err(Error::NotApplicable("need 0 <= eps < 90 degrees".into()));
    }
    let drawing = crate::lombardi::draw_via_packing(
        g,
        "eps-regular",
        Some(eps_deg),
        crate::lombardi::ArcAngles::EpsRegular { eps_deg, invert },
    )?;
    Ok(EpsDrawing {
        drawing,
        eps_deg,
        regular: true,
    })
}

/// ε-regular closed forms for the two multigraphs with at most 3 vertices.
pub fn base_case_draw(g: &PlaneMultigraph, eps_deg: f64) -> Result<EpsDrawing> {
    let base = match g.n_vertices() {
        2 => crate::drawing::theta4_drawing(eps_deg),
        3 => crate::drawing::triple_base_drawing(eps_deg),
        _ => return Err(Error::NotABaseCase),
    };
    let map = crate::graph::embedding_iso_map(&base.graph, g).ok_or(Error::NotABaseCase)?;
    let drawing = base.relabel(g, &map)?;
    Ok(EpsDrawing {
        drawing,
        eps_deg,
        regular: true,
    })
}

/// Lens multiplication inside an ε-angle drawing: the subdivision point
/// sits on the lens bisector, which splits the lens angle α into α/2 + α/2,
/// so all new angles are α or 180°−α — both within the old bound.
pub fn lens_multiply_eps(
    gamma: &EpsDrawing,
    lens: &crate::graph::Lens,
    k: usize,
) -> Result<EpsDrawing> {
    let drawing = lens_multiply_drawing(&gamma.drawing, lens, k)?;
    Ok(EpsDrawing {
        drawing,
        eps_deg: gamma.eps_deg,
        regular: false,
    })
}

/// Knot sum of ε-angle drawings (the Möbius construction never uses 90°).
pub fn knot_sum_eps(
    ga: &EpsDrawing,
    ea: Dart,
    gb: &EpsDrawing,
    eb: Dart,
) -> Result<EpsDrawing> {
    let drawing = knot_sum_drawings(&ga.drawing, ea, &gb.drawing, eb)?;
    Ok(EpsDrawing {
        drawing,
        eps_deg: ga.eps_deg.max(gb.eps_deg),
        regular: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders;
    use crate::notation::knot;
    use crate::verify::{verify, VerifyMode};

    #[test]
    fn orientation_alternates() {
        for g in [
            builders::theta4(),
            builders::octahedron(),
            knot("5_1").unwrap().graph,
        ] {
            let out = orient_medial(&g).unwrap();
            for v in 0..g.n_vertices() {
                let star = g.darts_of(v);
                let flags: Vec<bool> = star.iter().map(|&d| out[d]).collect();
                assert_eq!(flags.iter().filter(|&&b| b).count(), 2, "two outgoing");
                assert_eq!(flags[0], flags[2], "opposite darts share direction");
                assert_eq!(flags[1], flags[3]);
                assert_ne!(flags[0], flags[1], "adjacent darts alternate");
            }
            // Each edge directed exactly once.
            for e in g.edges() {
                assert_ne!(out[e], out[g.twin(e)]);
            }
        }
    }

    #[test]
    fn octahedron_eps_regular() {
        let g = crate::graph::medial_of_primal(&builders::k4()).unwrap();
        for eps in [0.0, 10.0] {
            let d = draw_eps_regular(&g, eps).unwrap();
            let r = verify(&d.drawing, VerifyMode::Eps(eps)).unwrap();
            assert!(r.pass(), "eps={eps}: {:#?}", r.lines());
            assert!(r.worst("opposite-tangency") < 1e-9);
            if eps > 0.0 {
                // Regular: angles exactly 90±eps, so the drawing fails a
                // slightly smaller bound.
                assert!(!verify(&d.drawing, VerifyMode::Eps(eps - 0.5)).unwrap().pass());
            }
        }
    }

    #[test]
    fn five_one_eps_ten_degrees() {
        let g = knot("5_1").unwrap().graph;
        let d = draw_eps_regular(&g, 10.0).unwrap();
        let r = verify(&d.drawing, VerifyMode::Eps(10.0)).unwrap();
        assert!(r.pass(), "{:#?}", r.lines());
        // Angles in {80°, 100°} to 1e-6: regular check.
        let deviations = regular_residual(&d);
        assert!(deviations < 1e-6, "regular residual {deviations}");
    }

    /// Max deviation of adjacent angles from exactly 90±eps (degrees).
    pub(crate) fn regular_residual(d: &EpsDrawing) -> f64 {
        let g = &d.drawing.graph;
        let mut worst = 0.0f64;
        for v in 0..g.n_vertices() {
            let star = g.darts_of(v);
            let angs: Vec<f64> = star
                .iter()
                .map(|&x| d.drawing.tangent_of_dart(x).angle())
                .collect();
            for i in 0..star.len() {
                let gap = crate::geom::deg(crate::geom::ccw_gap(
                    angs[i],
                    angs[(i + 1) % star.len()],
                ));
                let dev = (gap - (90.0 - d.eps_deg))
                    .abs()
                    .min((gap - (90.0 + d.eps_deg)).abs());
                worst = worst.max(dev);
            }
        }
        worst
    }

    #[test]
    fn base_cases_all_eps() {
        for eps in [0.0, 5.0, 20.0] {
            for g in [builders::theta4(), builders::triple_doubled()] {
                let d = base_case_draw(&g, eps).unwrap();
                let r = verify(&d.drawing, VerifyMode::Eps(eps)).unwrap();
                assert!(r.pass(), "{:#?}", r.lines());
                assert!(regular_residual(&d) < 1e-9);
            }
        }
    }

    #[test]
    fn lens_multiply_eps_angles() {
        // α = 95° lens: after one subdivision the new vertex sees angles
        // {95°, 85°}.
        let d = EpsDrawing {
            drawing: crate::drawing::theta4_drawing(5.0),
            eps_deg: 5.0,
            regular: true,
        };
        let lens = d.drawing.graph.find_lenses()[0];
        let out = lens_multiply_eps(&d, &lens, 2).unwrap();
        let r = verify(&out.drawing, VerifyMode::Eps(5.0)).unwrap();
        assert!(r.pass(), "{:#?}", r.lines());
        assert!(tests::regular_residual(&out) < 1e-9);
        // Chain of three also clean.
        let out3 = lens_multiply_eps(&d, &lens, 4).unwrap();
        assert!(verify(&out3.drawing, VerifyMode::Eps(5.0)).unwrap().pass());
    }

    #[test]
    fn knot_sum_eps_composes() {
        let t = crate::drawing::triple_base_drawing(4.0);
        let da = EpsDrawing { drawing: t, eps_deg: 4.0, regular: true };
        let e = da.drawing.graph.edges()[0];
        let sum = knot_sum_eps(&da, e, &da, e).unwrap();
        assert_eq!(sum.drawing.graph.n_vertices(), 6);
        assert_eq!(sum.eps_deg, 4.0);
        let r = verify(&sum.drawing, VerifyMode::Eps(4.0)).unwrap();
        assert!(r.pass(), "{:#?}", r.lines());
    }
}
