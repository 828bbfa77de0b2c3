//! The recursive ε-angle construction: base cases and packing for the
//! small/simple-pair graphs, lens contraction and re-expansion, vertex
//! merging with lens extension, and knot-sum decompositions at lenses and
//! separation pairs. Every recursive call strictly shrinks the graph.

use super::{base_case_draw, draw_eps_regular_oriented, knot_sum_eps, lens_extension_eps, lens_multiply_eps};
use crate::drawing::{Drawing, EpsDrawing};
use crate::error::Error;
use crate::geom::{ccw_gap, deg, CircleArc, Mobius, Pt};
use crate::graph::{
    contract_multilens, embedding_iso_map, primal_dual_of_medial, Dart, PlaneMultigraph, Vertex,
};
use crate::Result;
use num_complex::Complex64;

/// Plane ε-angle Lombardi drawing of any biconnected 4-regular plane
/// multigraph, for any ε > 0.
pub fn draw_eps(g: &PlaneMultigraph, eps_deg: f64) -> Result<EpsDrawing> {
    if eps_deg <= 0.0 || eps_deg >= 90.0 {
        return Err(Error::NotApplicable("need 0 < eps < 90 degrees".into()));
    }
    if !g.is_regular(4) || g.has_loop() || !g.is_biconnected() {
        return Err(Error::NotApplicable(
            "need a biconnected loop-free 4-regular plane multigraph".into(),
        ));
    }
    let mut out = draw_rec(g, eps_deg, 0)?;
    out.drawing.method = "eps".into();
    out.drawing.eps_deg = Some(eps_deg);
    Ok(out)
}

fn relabel_onto(g: &PlaneMultigraph, d: EpsDrawing) -> Result<EpsDrawing> {
    let map = embedding_iso_map(&d.drawing.graph, g).ok_or_else(|| {
        Error::InvariantViolation("recombined graph does not match the input embedding".into())
    })?;
    Ok(EpsDrawing {
        drawing: d.drawing.relabel(g, &map)?,
        eps_deg: d.eps_deg,
        regular: d.regular,
    })
}

fn draw_rec(g: &PlaneMultigraph, eps_deg: f64, depth: usize) -> Result<EpsDrawing> {
    if depth > 3 * g.n_vertices() + 40 {
        return Err(Error::InvariantViolation("recursion failed to shrink".into()));
    }
    let n = g.n_vertices();
    // Base cases: the two multigraphs on <= 3 vertices.
    if n <= 3 {
        return base_case_draw(g, eps_deg);
    }
    // Packing: covers polyhedral graphs and every other medial of a pair
    // with a simple side (angles come out exactly 90°).
    let pair = primal_dual_of_medial(g)?;
    if pair.primal.is_simple() || pair.dual.is_simple() {
        let drawing = crate::lombardi::draw_simple_side(g)?;
        return Ok(EpsDrawing {
            drawing,
            eps_deg,
            regular: false,
        });
    }
    // Multilens: contract the chain, recurse, re-expand inside the drawing.
    if let Some(chain) = g
        .find_multilens()
        .into_iter()
        .filter(|c| c.len() >= 3 && c.first() != c.last())
        .min_by_key(|c| c.clone())
    {
        let (contracted, map) = contract_multilens(g, &chain)?;
        let sub = draw_rec(&contracted, eps_deg, depth + 1)?;
        let lens = crate::graph::contracted_chain_lens(g, &contracted, &map, &chain)?;
        let expanded = lens_multiply_eps(&sub, &lens, chain.len() - 1)?;
        return relabel_onto(g, expanded);
    }
    // Lens cases by multiplicity.
    if let Some(lens) = g.find_lenses().into_iter().min_by_key(|l| (l.u, l.v)) {
        let (u, v) = (lens.u, lens.v);
        match g.multiplicity(u, v) {
            4 => unreachable!("handled by the base case"),
            3 => return relabel_onto(g, triple_lens_case(g, u, v, eps_deg, depth)?),
            2 => {
                let comps = g.components_without(&[u, v]);
                if comps.len() == 1 {
                    return relabel_onto(g, lens_contract_case(g, u, v, eps_deg, depth)?);
                }
                return relabel_onto(g, lens_sep_case(g, u, v, eps_deg, depth)?);
            }
            m => {
                return Err(Error::InvariantViolation(format!(
                    "lens with multiplicity {m}"
                )))
            }
        }
    }
    // Simple but not 3-connected: minimal separation pair.
    let (u, v, comp) = g
        .minimal_separation_pair()
        .ok_or_else(|| Error::InvariantViolation("simple non-3-connected graph without separation pair".into()))?;
    let deg_a_u = degree_into(g, u, &comp);
    let deg_a_v = degree_into(g, v, &comp);
    match (deg_a_u, deg_a_v) {
        (1, _) | (_, 1) => Err(Error::InvariantViolation(
            "minimal separation pair with a pendant side".into(),
        )),
        (3, 3) => relabel_onto(g, sep_33_case(g, u, v, &comp, eps_deg, depth)?),
        (2, 2) => {
            let comps = g.components_without(&[u, v]);
            if comps.len() >= 3 {
                relabel_onto(g, sep_22_three_case(g, u, v, eps_deg, depth)?)
            } else {
                relabel_onto(g, sep_22_overlay_case(g, u, v, &comp, eps_deg, depth)?)
            }
        }
        other => Err(Error::InvariantViolation(format!(
            "separation pair degrees {other:?} violate 4-regular parity"
        ))),
    }
}

fn degree_into(g: &PlaneMultigraph, x: Vertex, comp: &[Vertex]) -> usize {
    g.darts_of(x)
        .into_iter()
        .filter(|&d| comp.contains(&g.head(d)))
        .count()
}

fn tables(g: &PlaneMultigraph) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = g.n_darts();
    (
        (0..n).map(|d| g.vertex(d)).collect(),
        (0..n).map(|d| g.twin(d)).collect(),
        (0..n).map(|d| g.rot_next(d)).collect(),
    )
}

/// Rebuild a sub-multigraph from kept darts, with rotation orders repaired
/// per vertex and twins overridden by `retwin`.
fn rebuild_with(
    g: &PlaneMultigraph,
    keep: &[bool],
    retwin: &[(Dart, Dart)],
) -> Result<(PlaneMultigraph, Vec<Option<Dart>>)> {
    let (dv, mut tw, mut rn) = tables(g);
    for &(a, b) in retwin {
        tw[a] = b;
        tw[b] = a;
    }
    for v in 0..g.n_vertices() {
        let star = g.darts_of(v);
        let kept: Vec<Dart> = star.iter().copied().filter(|&d| keep[d]).collect();
        for i in 0..kept.len() {
            rn[kept[i]] = kept[(i + 1) % kept.len()];
        }
    }
    let mut map = vec![None; g.n_darts()];
    let mut next = 0;
    for d in 0..g.n_darts() {
        if keep[d] {
            map[d] = Some(next);
            next += 1;
        }
    }
    let mut vmap = vec![usize::MAX; g.n_vertices()];
    let mut vc = 0;
    let mut ndv = Vec::new();
    let mut ntw = Vec::new();
    let mut nrn = Vec::new();
    for d in 0..g.n_darts() {
        if !keep[d] {
            continue;
        }
        if vmap[dv[d]] == usize::MAX {
            vmap[dv[d]] = vc;
            vc += 1;
        }
        ndv.push(vmap[dv[d]]);
        ntw.push(map[tw[d]].ok_or_else(|| Error::InvalidSite("twin dropped".into()))?);
        nrn.push(map[rn[d]].ok_or_else(|| Error::InvalidSite("rot dropped".into()))?);
    }
    Ok((PlaneMultigraph::from_permutations(ndv, ntw, nrn)?, map))
}

/// Case: three parallel edges between u and v. Remove both vertices,
/// reconnect their outside neighbors, recurse, and splice a 2-vertex
/// block back in with a knot sum.
fn triple_lens_case(
    g: &PlaneMultigraph,
    u: Vertex,
    v: Vertex,
    eps_deg: f64,
    depth: usize,
) -> Result<EpsDrawing> {
    // The single non-parallel dart at u and at v.
    let u_out = g
        .darts_of(u)
        .into_iter()
        .find(|&d| g.head(d) != v)
        .ok_or_else(|| Error::InvalidSite("u has no outside edge".into()))?;
    let v_out = g
        .darts_of(v)
        .into_iter()
        .find(|&d| g.head(d) != u)
        .ok_or_else(|| Error::InvalidSite("v has no outside edge".into()))?;
    let mut keep = vec![true; g.n_darts()];
    for d in g.darts_of(u) {
        keep[d] = false;
        keep[g.twin(d)] = false;
    }
    for d in g.darts_of(v) {
        keep[d] = false;
        keep[g.twin(d)] = false;
    }
    let (a, b) = (g.twin(u_out), g.twin(v_out));
    keep[a] = true;
    keep[b] = true;
    let (gp, map) = rebuild_with(g, &keep, &[(a, b)])?;
    let sub = draw_rec(&gp, eps_deg, depth + 1)?;
    let block = base_case_draw(&crate::graph::builders::theta4(), eps_deg)?;
    let joined = knot_sum_eps(
        &sub,
        map[a].unwrap(),
        &block,
        block.drawing.graph.edges()[0],
    )?;
    Ok(joined)
}

/// Case: a 2-lens whose endpoints do not separate the graph. Contract u,v
/// to a single vertex, recurse with ε/2, and re-expand by lens extension
/// with budget ε/2.
fn lens_contract_case(
    g: &PlaneMultigraph,
    u: Vertex,
    v: Vertex,
    eps_deg: f64,
    depth: usize,
) -> Result<EpsDrawing> {
    // Lens darts at u and the two outside darts of each endpoint.
    let lens_at_u: Vec<Dart> = g.darts_of(u).into_iter().filter(|&d| g.head(d) == v).collect();
    if lens_at_u.len() != 2 {
        return Err(Error::InvalidSite("expected exactly two parallel edges".into()));
    }
    let mut keep = vec![true; g.n_darts()];
    for &d in &lens_at_u {
        keep[d] = false;
        keep[g.twin(d)] = false;
    }
    // Merge v into u: reuse rebuild_with by reassigning vertices first.
    let (mut dv, tw, rn) = tables(g);
    for d in 0..g.n_darts() {
        if dv[d] == v {
            dv[d] = u;
        }
    }
    // Rotation at the merged vertex: u's outside block then v's outside
    // block, in their original cyclic orders starting after the lens.
    let u_after = |d: Dart| {
        let mut x = g.rot_next(d);
        while !keep[x] {
            x = g.rot_next(x);
        }
        x
    };
    let _ = u_after;
    let u_block: Vec<Dart> = {
        // u's star starting from a lens dart, filtered.
        let start = lens_at_u[0];
        g.star(start).into_iter().filter(|&d| keep[d]).collect()
    };
    let v_block: Vec<Dart> = {
        let start = g.twin(lens_at_u[0]);
        g.star(start).into_iter().filter(|&d| keep[d]).collect()
    };
    if u_block.len() != 2 || v_block.len() != 2 {
        return Err(Error::InvalidSite("lens endpoints must have two outside edges".into()));
    }
    let merged: Vec<Dart> = u_block.iter().chain(v_block.iter()).copied().collect();
    let mut rn2 = rn;
    for i in 0..merged.len() {
        rn2[merged[i]] = merged[(i + 1) % merged.len()];
    }
    // Dense rebuild.
    let mut map = vec![None; g.n_darts()];
    let mut next = 0;
    for d in 0..g.n_darts() {
        if keep[d] {
            map[d] = Some(next);
            next += 1;
        }
    }
    let mut vmap = vec![usize::MAX; g.n_vertices()];
    let mut vc = 0;
    let mut ndv = Vec::new();
    let mut ntw = Vec::new();
    let mut nrn = Vec::new();
    for d in 0..g.n_darts() {
        if !keep[d] {
            continue;
        }
        if vmap[dv[d]] == usize::MAX {
            vmap[dv[d]] = vc;
            vc += 1;
        }
        ndv.push(vmap[dv[d]]);
        ntw.push(map[tw[d]].unwrap());
        nrn.push(map[rn2[d]].unwrap());
    }
    let gp = PlaneMultigraph::from_permutations(ndv, ntw, nrn)?;
    let x = vmap[u];
    let split = map[merged[0]].unwrap();
    let sub = draw_rec(&gp, eps_deg / 2.0, depth + 1)?;
    lens_extension_eps(&sub, x, split, eps_deg / 2.0)
}

/// Case: a 2-lens whose endpoints form a separation pair. One side keeps
/// u,v with a third parallel edge; the other side gets a replacement edge;
/// recombine with a knot sum.
fn lens_sep_case(
    g: &PlaneMultigraph,
    u: Vertex,
    v: Vertex,
    eps_deg: f64,
    depth: usize,
) -> Result<EpsDrawing> {
    let comps = g.components_without(&[u, v]);
    // B = the smallest component; A' = everything else + extra (u,v) edge.
    let b_comp = comps
        .iter()
        .min_by_key(|c| (c.len(), c[0]))
        .unwrap()
        .clone();
    let u_b = g
        .darts_of(u)
        .into_iter()
        .find(|&d| b_comp.contains(&g.head(d)))
        .ok_or_else(|| Error::InvalidSite("u has no edge into B".into()))?;
    let v_b = g
        .darts_of(v)
        .into_iter()
        .find(|&d| b_comp.contains(&g.head(d)))
        .ok_or_else(|| Error::InvalidSite("v has no edge into B".into()))?;
    // A' keeps u,v: drop B vertices; u_b re-twinned with v_b (the extra
    // (u,v) edge completing 4-regularity).
    let mut keep_a = vec![true; g.n_darts()];
    for d in 0..g.n_darts() {
        if b_comp.contains(&g.vertex(d)) {
            keep_a[d] = false;
        }
    }
    let (ga, map_a) = rebuild_with(g, &keep_a, &[(u_b, v_b)])?;
    // B' = B + edge joining the two attachment neighbors.
    let mut keep_b = vec![false; g.n_darts()];
    for d in 0..g.n_darts() {
        if b_comp.contains(&g.vertex(d)) && b_comp.contains(&g.head(d)) {
            keep_b[d] = true;
        }
    }
    let (bu, bv) = (g.twin(u_b), g.twin(v_b));
    keep_b[bu] = true;
    keep_b[bv] = true;
    let (gb, map_b) = rebuild_with(g, &keep_b, &[(bu, bv)])?;
    let da = draw_rec(&ga, eps_deg, depth + 1)?;
    let db = draw_rec(&gb, eps_deg, depth + 1)?;
    knot_sum_eps(&da, map_a[u_b].unwrap(), &db, map_b[bu].unwrap())
}

/// Case: minimal separation pair with three edges into the small side.
fn sep_33_case(
    g: &PlaneMultigraph,
    u: Vertex,
    v: Vertex,
    comp: &[Vertex],
    eps_deg: f64,
    depth: usize,
) -> Result<EpsDrawing> {
    // A' = comp + u,v + new (u,v) edge replacing the B-side darts.
    let u_b = g
        .darts_of(u)
        .into_iter()
        .find(|&d| !comp.contains(&g.head(d)) && g.head(d) != v)
        .ok_or_else(|| Error::InvalidSite("u lacks a B-side dart".into()))?;
    let v_b = g
        .darts_of(v)
        .into_iter()
        .find(|&d| !comp.contains(&g.head(d)) && g.head(d) != u)
        .ok_or_else(|| Error::InvalidSite("v lacks a B-side dart".into()))?;
    let mut keep_a = vec![true; g.n_darts()];
    for d in 0..g.n_darts() {
        let x = g.vertex(d);
        let in_a = comp.contains(&x) || x == u || x == v;
        if !in_a {
            keep_a[d] = false;
        }
    }
    for d in 0..g.n_darts() {
        if !keep_a[d] {
            continue;
        }
        let h = g.head(d);
        if !(comp.contains(&h) || h == u || h == v) {
            keep_a[d] = false;
        }
    }
    keep_a[u_b] = true;
    keep_a[v_b] = true;
    let (ga, map_a) = rebuild_with(g, &keep_a, &[(u_b, v_b)])?;
    // B' = rest - {u,v} + edge (x,y) between their B-neighbors.
    let (bu, bv) = (g.twin(u_b), g.twin(v_b));
    let mut keep_b = vec![false; g.n_darts()];
    for d in 0..g.n_darts() {
        let x = g.vertex(d);
        let h = g.head(d);
        let b_side = |y: Vertex| y != u && y != v && !comp.contains(&y);
        if b_side(x) && b_side(h) {
            keep_b[d] = true;
        }
    }
    keep_b[bu] = true;
    keep_b[bv] = true;
    let (gb, map_b) = rebuild_with(g, &keep_b, &[(bu, bv)])?;
    let da = draw_rec(&ga, eps_deg, depth + 1)?;
    let db = draw_rec(&gb, eps_deg, depth + 1)?;
    knot_sum_eps(&da, map_a[u_b].unwrap(), &db, map_b[bu].unwrap())
}

/// Case: (2,2) separation pair splitting into three components.
fn sep_22_three_case(
    g: &PlaneMultigraph,
    u: Vertex,
    v: Vertex,
    eps_deg: f64,
    depth: usize,
) -> Result<EpsDrawing> {
    let comps = g.components_without(&[u, v]);
    let mut comps = comps;
    comps.sort_by_key(|c| (c.len(), c[0]));
    let (b_comp, c_comp) = (comps[comps.len() - 2].clone(), comps[comps.len() - 1].clone());
    // A' = everything except B and C, with two extra (u,v) edges.
    let u_b = g.darts_of(u).into_iter().find(|&d| b_comp.contains(&g.head(d))).unwrap();
    let v_b = g.darts_of(v).into_iter().find(|&d| b_comp.contains(&g.head(d))).unwrap();
    let u_c = g.darts_of(u).into_iter().find(|&d| c_comp.contains(&g.head(d))).unwrap();
    let v_c = g.darts_of(v).into_iter().find(|&d| c_comp.contains(&g.head(d))).unwrap();
    let mut keep_a = vec![true; g.n_darts()];
    for d in 0..g.n_darts() {
        if b_comp.contains(&g.vertex(d)) || c_comp.contains(&g.vertex(d)) {
            keep_a[d] = false;
        }
    }
    keep_a[u_b] = true;
    keep_a[v_b] = true;
    keep_a[u_c] = true;
    keep_a[v_c] = true;
    let (ga, map_a) = rebuild_with(g, &keep_a, &[(u_b, v_b), (u_c, v_c)])?;
    let side = |comp: &[Vertex], ud: Dart, vd: Dart| -> Result<(PlaneMultigraph, Vec<Option<Dart>>, Dart)> {
        let (bu, bv) = (g.twin(ud), g.twin(vd));
        let mut keep = vec![false; g.n_darts()];
        for d in 0..g.n_darts() {
            if comp.contains(&g.vertex(d)) && comp.contains(&g.head(d)) {
                keep[d] = true;
            }
        }
        keep[bu] = true;
        keep[bv] = true;
        let (gg, map) = rebuild_with(g, &keep, &[(bu, bv)])?;
        Ok((gg, map, bu))
    };
    let (gb, map_b, bu) = side(&b_comp, u_b, v_b)?;
    let (gc, map_c, cu) = side(&c_comp, u_c, v_c)?;
    let da = draw_rec(&ga, eps_deg, depth + 1)?;
    let db = draw_rec(&gb, eps_deg, depth + 1)?;
    let dc = draw_rec(&gc, eps_deg, depth + 1)?;
    let ab = knot_sum_eps(&da, map_a[u_b].unwrap(), &db, map_b[bu].unwrap())?;
    // The other (u,v) edge survives in `ab` under the sum's A-side map
    // (identity on A darts).
    knot_sum_eps(&ab, map_a[u_c].unwrap(), &dc, map_c[cu].unwrap())
}

/// Case: (2,2) separation pair with exactly two components — the packing
/// overlay. The A side with a doubled (u,v) edge has a simple primal or
/// dual; draw it ε-regular with the lens angle matched to the B side's,
/// normalize both lenses onto common circles, and nest B inside.
fn sep_22_overlay_case(
    g: &PlaneMultigraph,
    u: Vertex,
    v: Vertex,
    comp: &[Vertex],
    eps_deg: f64,
    depth: usize,
) -> Result<EpsDrawing> {
    // u's and v's darts into A (= comp) and into B.
    let in_a = |y: Vertex| comp.contains(&y);
    let u_a: Vec<Dart> = g.darts_of(u).into_iter().filter(|&d| in_a(g.head(d))).collect();
    let v_a: Vec<Dart> = g.darts_of(v).into_iter().filter(|&d| in_a(g.head(d))).collect();
    if u_a.len() != 2 || v_a.len() != 2 {
        return Err(Error::InvalidSite("overlay case expects (2,2) degrees".into()));
    }
    // A' = comp + u,v + two (u,v) edges in place of the B darts; similarly
    // B' on the complement.
    let build_side = |into: &dyn Fn(Vertex) -> bool| -> Result<(PlaneMultigraph, Vec<Option<Dart>>)> {
        let mut keep = vec![false; g.n_darts()];
        for d in 0..g.n_darts() {
            let x = g.vertex(d);
            let h = g.head(d);
            let x_in = into(x) || x == u || x == v;
            let h_in = into(h) || h == u || h == v;
            if x_in && h_in && (into(x) || into(h) || (x == u && h == v) || (x == v && h == u)) {
                keep[d] = true;
            }
        }
        // u and v keep their two side darts; add two parallel edges by
        // re-twinning u's dropped darts against v's in planar order.
        let u_drop: Vec<Dart> = g
            .darts_of(u)
            .into_iter()
            .filter(|&d| !keep[d])
            .collect();
        let v_drop: Vec<Dart> = g
            .darts_of(v)
            .into_iter()
            .filter(|&d| !keep[d])
            .collect();
        if u_drop.len() != 2 || v_drop.len() != 2 {
            return Err(Error::InvalidSite("overlay side structure broken".into()));
        }
        for &d in u_drop.iter().chain(v_drop.iter()) {
            keep[d] = true;
        }
        // Planar pairing: around the separating pair the two dropped darts
        // of u see the two of v in reversed cyclic order.
        let try_pairings = [
            [(u_drop[0], v_drop[1]), (u_drop[1], v_drop[0])],
            [(u_drop[0], v_drop[0]), (u_drop[1], v_drop[1])],
        ];
        for pairing in try_pairings {
            if let Ok((gg, map)) = rebuild_with(g, &keep, &pairing) {
                if gg.is_biconnected() && gg.is_regular(4) {
                    return Ok((gg, map));
                }
            }
        }
        Err(Error::InvalidSite("no planar re-twinning for the overlay side".into()))
    };
    let not_in_a = |y: Vertex| !in_a(y) && y != u && y != v;
    let (ga, map_a) = build_side(&in_a)?;
    let (gb, map_b) = build_side(&not_in_a)?;
    // Draw B' recursively; measure its lens angle.
    let db = draw_rec(&gb, eps_deg, depth + 1)?;
    let (bu, bv) = (map_b[g.darts_of(u)[0]].map(|d| gb.vertex(d)), map_b[g.darts_of(v)[0]].map(|d| gb.vertex(d)));
    let bu = bu.or_else(|| map_b[g.darts_of(u)[1]].map(|d| gb.vertex(d)))
        .or_else(|| map_b[g.darts_of(u)[2]].map(|d| gb.vertex(d)))
        .or_else(|| map_b[g.darts_of(u)[3]].map(|d| gb.vertex(d)))
        .ok_or_else(|| Error::InvalidSite("u lost in B'".into()))?;
    let bv = bv.or_else(|| map_b[g.darts_of(v)[1]].map(|d| gb.vertex(d)))
        .or_else(|| map_b[g.darts_of(v)[2]].map(|d| gb.vertex(d)))
        .or_else(|| map_b[g.darts_of(v)[3]].map(|d| gb.vertex(d)))
        .ok_or_else(|| Error::InvalidSite("v lost in B'".into()))?;
    // The lens angle at u in B': the ccw gap between the two (u,v)-lens
    // darts bounding the lens face.
    let lens_b = gb
        .find_lenses()
        .into_iter()
        .find(|l| (l.u, l.v) == (bu.min(bv), bu.max(bv)))
        .ok_or_else(|| Error::InvalidSite("B' lost its lens".into()))?;
    let gap_b = lens_gap(&db.drawing, &lens_b);
    let alpha = gap_b - 90.0;
    // Draw A' ε-regular with |alpha|, trying both orientations so its lens
    // angle is 90 + alpha (not 90 - alpha).
    let lens_a0 = |gg: &PlaneMultigraph| {
        gg.find_lenses()
            .into_iter()
            .max_by_key(|l| (l.u.max(l.v), l.u.min(l.v)))
            .ok_or_else(|| Error::InvalidSite("A' lost its lens".into()))
    };
    let mut da = None;
    for invert in [false, true] {
        let cand = draw_eps_regular_oriented(&ga, alpha.abs(), invert)?;
        let lens = lens_a0(&ga)?;
        let gap = lens_gap(&cand.drawing, &lens);
        if (gap - (90.0 + alpha)).abs() < 1e-6 {
            da = Some((cand, lens));
            break;
        }
    }
    let (da, lens_a) = da.ok_or_else(|| {
        Error::InvariantViolation("neither orientation matches the B-side lens angle".into())
    })?;
    overlay(g, &da, &lens_a, &db, &lens_b, map_a, map_b, eps_deg)
}

/// Interior angle of the lens at `lens.u`, degrees.
fn lens_gap(d: &Drawing, lens: &crate::graph::Lens) -> f64 {
    let (d1, d2) = lens.darts_at_u;
    let t1 = d.tangent_of_dart(d1).angle();
    let t2 = d.tangent_of_dart(d2).angle();
    deg(ccw_gap(t1, t2).min(ccw_gap(t2, t1)))
}

/// Nest the B-side drawing inside the lens circles of the A-side drawing
/// and delete both lens pairs.
#[allow(clippy::too_many_arguments)]
fn overlay(
    g: &PlaneMultigraph,
    da: &EpsDrawing,
    lens_a: &crate::graph::Lens,
    db: &EpsDrawing,
    lens_b: &crate::graph::Lens,
    map_a: Vec<Option<Dart>>,
    map_b: Vec<Option<Dart>>,
    eps_deg: f64,
) -> Result<EpsDrawing> {
    let ga = &da.drawing.graph;
    let gb = &db.drawing.graph;
    let mut delta = 1.0f64;
    for _ in 0..64 {
        // Normalize A: lens endpoints to ∓delta with the first lens arc at
        // tangent-chord +(gap/2) — the symmetric position.
        let na = normalize_lens(&da.drawing, lens_a, delta, false)?;
        let nb = normalize_lens(&db.drawing, lens_b, delta, true)?;
        // Containment: B-rest inside the union of the two lens circles of
        // A (which the normalization makes the same circles for both).
        let lens_arcs_a: Vec<CircleArc> = {
            let (l1, l2) = lens_a.darts_at_u;
            vec![na.chain_from(l1)[0], na.chain_from(l2)[0]]
        };
        let circles: Vec<crate::geom::Circle> =
            lens_arcs_a.iter().filter_map(|a| a.circle()).collect();
        if circles.len() != 2 {
            delta /= 2.0;
            continue;
        }
        let inside = |p: Pt| circles.iter().any(|c| c.signed_dist(p) < 1e-9);
        let mut ok = true;
        'chk: for e in &nb.edges {
            let (x, y) = (gb.vertex(e.darts.0), gb.vertex(e.darts.1));
            if [x, y].iter().any(|&z| z == lens_b.u || z == lens_b.v) {
                continue;
            }
            for arc in &e.arcs {
                for k in 0..=8 {
                    if !inside(arc.point_at(k as f64 / 8.0)) {
                        ok = false;
                        break 'chk;
                    }
                }
            }
        }
        if ok {
            // A-rest must avoid the circles.
            'chk2: for e in &na.edges {
                let (x, y) = (ga.vertex(e.darts.0), ga.vertex(e.darts.1));
                if [x, y].iter().any(|&z| z == lens_a.u || z == lens_a.v) {
                    continue;
                }
                for arc in &e.arcs {
                    for k in 0..=8 {
                        if inside(arc.point_at(k as f64 / 8.0)) {
                            ok = false;
                            break 'chk2;
                        }
                    }
                }
            }
        }
        if !ok {
            delta /= 2.0;
            continue;
        }
        // Assemble: union graph = g (validated by relabel); positions and
        // chains from both sides, lens edges dropped.
        let mut positions = vec![Pt::default(); g.n_vertices()];
        let mut chains: Vec<(Dart, Vec<CircleArc>)> = Vec::new();
        // Reverse maps: g dart -> side dart.
        let mut ra = vec![None; g.n_darts()];
        for (gd, sd) in map_a.iter().enumerate() {
            if let Some(sd) = *sd {
                ra[gd] = Some(sd);
            }
        }
        let mut rb = vec![None; g.n_darts()];
        for (gd, sd) in map_b.iter().enumerate() {
            if let Some(sd) = *sd {
                rb[gd] = Some(sd);
            }
        }
        for gd in 0..g.n_darts() {
            let v = g.vertex(gd);
            if let Some(sd) = ra[gd] {
                positions[v] = na.positions[ga.vertex(sd)];
            } else if let Some(sd) = rb[gd] {
                positions[v] = nb.positions[gb.vertex(sd)];
            }
        }
        for e in g.edges() {
            let arcs = if let (Some(sa), Some(_)) = (ra[e], ra[g.twin(e)]) {
                let chain = na.chain_from(sa);
                Some(chain)
            } else if let (Some(sb), Some(_)) = (rb[e], rb[g.twin(e)]) {
                Some(nb.chain_from(sb))
            } else {
                None
            };
            let arcs = arcs.ok_or_else(|| {
                Error::InvariantViolation("edge of g missing from both overlay sides".into())
            })?;
            chains.push((e, arcs));
        }
        let drawing = Drawing::new(
            g.clone(),
            positions,
            chains,
            &da.drawing.method,
            Some(eps_deg),
        )?;
        let report = crate::verify::verify(&drawing, crate::verify::VerifyMode::Eps(eps_deg))?;
        if report.pass() {
            return Ok(EpsDrawing {
                drawing,
                eps_deg,
                regular: false,
            });
        }
        delta /= 2.0;
    }
    Err(Error::AlignmentFailed)
}

/// Möbius-normalize a drawing so the given lens runs between (∓delta, 0)
/// with symmetric arcs; `complementary` selects the wide side (135°−α/2
/// tangent-chord) used by the inner drawing.
fn normalize_lens(
    d: &Drawing,
    lens: &crate::graph::Lens,
    delta: f64,
    complementary: bool,
) -> Result<Drawing> {
    let (l1, _) = lens.darts_at_u;
    let u = lens.u;
    let v = lens.v;
    let m0 = Mobius::sending(
        [
            d.positions[u].to_complex(),
            d.positions[v].to_complex(),
            d.chain_from(l1)[0].midpoint().to_complex(),
        ],
        [
            Complex64::new(-delta, 0.0),
            Complex64::new(delta, 0.0),
            Complex64::new(0.0, if complementary { 3.0 * delta } else { delta }),
        ],
    )?;
    let d1 = d.mobius(&m0)?;
    // Pencil rotation: put the first lens arc at the target tangent-chord.
    let arc = d1.chain_from(l1)[0];
    let gap = lens_gap(&d1, lens);
    let target = if complementary {
        180.0 - gap / 2.0
    } else {
        gap / 2.0
    };
    let chord = (d1.positions[v] - d1.positions[u]).angle();
    let current = crate::geom::wrap_angle(arc.tangent_at_p().angle() - chord);
    let theta = target.to_radians() - current;
    // Rotation of the pencil through (∓delta, 0): conjugate scaling by
    // e^{iθ} in the frame sending those points to 0/∞.
    let pm = Mobius::sending(
        [
            Complex64::new(-delta, 0.0),
            Complex64::new(delta, 0.0),
            Complex64::new(0.0, 0.0),
        ],
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(f64::INFINITY, f64::INFINITY),
            Complex64::new(1.0, 0.0),
        ],
    )?;
    let rot = pm
        .inverse()
        .compose(&Mobius::similarity(Complex64::from_polar(1.0, theta), Complex64::new(0.0, 0.0))?)
        .compose(&pm);
    d1.mobius(&rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::knot;
    use crate::verify::{verify, VerifyMode};

    fn check(name: &str, g: &PlaneMultigraph, eps: f64) {
        let d = draw_eps(g, eps).unwrap_or_else(|e| panic!("{name} at eps {eps}: {e}"));
        let r = verify(&d.drawing, VerifyMode::Eps(eps)).unwrap();
        assert!(r.pass(), "{name} (eps {eps}): {:#?}", r.lines());
    }

    #[test]
    fn figure_eight_draws_at_eps() {
        let g = knot("4_1").unwrap().graph;
        check("4_1", &g, 10.0);
        check("4_1", &g, 1.0);
    }

    #[test]
    fn five_two_draws_at_eps() {
        let g = knot("5_2").unwrap().graph;
        check("5_2", &g, 1.0);
    }

    #[test]
    fn twist_knots_draw_at_eps() {
        for name in ["6_1", "7_2", "8_1"] {
            let g = knot(name).unwrap().graph;
            check(name, &g, 5.0);
        }
    }

    #[test]
    fn granny_knot_draws_at_eps() {
        let t = knot("3_1").unwrap().graph;
        let e = t.edges()[0];
        let (sum, _, _) = crate::graph::knot_sum(&t, e, &t, e).unwrap();
        check("granny", &sum, 5.0);
    }

    #[test]
    fn wheel_pair_overlay_instance() {
        // Two wheels joined through a (2,2) separation pair: the genuine
        // overlay case (simple, not 3-connected, no 2-edge cut).
        let g = wheel_pair();
        assert!(g.is_simple());
        assert!(!g.separation_pairs().is_empty());
        check("wheel-pair", &g, 5.0);
    }

    /// Two 4-wheels glued at a separation pair {u,v}: u joins rims 0,1 of
    /// wheel A and rims 5,6 of wheel B; v joins rims 2,3 and 7,8. The
    /// bridge vertices' rotations are found by search (first valid planar
    /// embedding).
    pub(crate) fn wheel_pair() -> PlaneMultigraph {
        let fixed: [&[usize]; 10] = [
            &[0, 4, 3, 16],
            &[1, 5, 0, 17],
            &[2, 6, 1, 20],
            &[3, 7, 2, 21],
            &[4, 5, 6, 7],
            &[8, 12, 11, 18],
            &[9, 13, 8, 19],
            &[10, 14, 9, 22],
            &[11, 15, 10, 23],
            &[12, 13, 14, 15],
        ];
        let perms3 = |items: [usize; 3]| -> Vec<[usize; 3]> {
            let [a, b, c] = items;
            vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
        };
        for pu in perms3([17, 18, 19]) {
            for pv in perms3([21, 22, 23]) {
                let u_star = [16, pu[0], pu[1], pu[2]];
                let v_star = [20, pv[0], pv[1], pv[2]];
                let mut dart_vertex = Vec::new();
                let mut order = Vec::new();
                let all: Vec<&[usize]> = fixed
                    .iter()
                    .copied()
                    .chain([&u_star[..], &v_star[..]])
                    .collect();
                for (v, star) in all.iter().enumerate() {
                    for &e in star.iter() {
                        dart_vertex.push(v);
                        order.push(e);
                    }
                }
                let n = dart_vertex.len();
                let mut twin = vec![usize::MAX; n];
                let mut first = std::collections::BTreeMap::new();
                let mut ok = true;
                for d in 0..n {
                    match first.get(&order[d]) {
                        None => {
                            first.insert(order[d], d);
                        }
                        Some(&o) => {
                            if twin[o] != usize::MAX {
                                ok = false;
                                break;
                            }
                            twin[o] = d;
                            twin[d] = o;
                        }
                    }
                }
                if !ok || twin.iter().any(|&t| t == usize::MAX) {
                    continue;
                }
                let mut rot = vec![0; n];
                let mut base = 0;
                for star in all.iter() {
                    let k = star.len();
                    for i in 0..k {
                        rot[base + i] = base + (i + 1) % k;
                    }
                    base += k;
                }
                if let Ok(g) = PlaneMultigraph::from_permutations(dart_vertex, twin, rot) {
                    if g.is_regular(4) && g.is_biconnected() {
                        return g;
                    }
                }
            }
        }
        panic!("no planar embedding found for the wheel pair");
    }
}
