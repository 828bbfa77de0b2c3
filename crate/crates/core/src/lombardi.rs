//! Plane Lombardi drawings: the circle-packing pipeline, composition
//! operators, obstruction certificates and family generators.

use crate::drawing::Drawing;
use crate::error::Error;
use crate::geom::{bisector_arc, CircleArc, Mobius, Pt};
use crate::graph::{
    self, contract_multilens, knot_sum, medial_iso_map, primal_dual_of_medial, Dart, Lens,
    PlaneMultigraph, PrimalDualPair, Vertex,
};
use crate::pack::{augment_to_polyhedral, pack, PeelState};
use crate::Result;
use num_complex::Complex64;

/// Why a shadow provably has no plane Lombardi drawing.
#[derive(Debug, Clone)]
pub enum Obstruction {
    /// Four vertices inducing a complete graph, with edge witnesses.
    K4 {
        vertices: [Vertex; 4],
        edges: [Dart; 6],
    },
    /// Matches a certificate in the known-impossible database.
    Known { name: String, reason: String },
}

#[derive(Debug, Clone)]
pub enum LombardiOutcome {
    Drawing(Drawing),
    Obstruction(Obstruction),
    /// No implemented strategy applies; not a proof of impossibility.
    NotSupported,
}

impl PrimalDualPair {
    /// Swap the roles of primal and dual.
    pub fn swapped(&self) -> PrimalDualPair {
        PrimalDualPair {
            primal: self.dual.clone(),
            dual: self.primal.clone(),
            medial: self.medial.clone(),
            side_dart: self
                .side_dart
                .iter()
                .map(|&(c, d)| (1 - c, d))
                .collect(),
            g_of_primal: self.g_of_dual.clone(),
            g_of_dual: self.g_of_primal.clone(),
            primal_edge_of_vertex: self.dual_edge_of_vertex.clone(),
            dual_edge_of_vertex: self.primal_edge_of_vertex.clone(),
            face_owner: self
                .face_owner
                .iter()
                .map(|&(c, v)| (1 - c, v))
                .collect(),
        }
    }
}

impl Drawing {
    /// Re-key a drawing onto an isomorphic graph via a dart bijection
    /// `map[dart of self.graph] = dart of target`.
    pub fn relabel(&self, target: &PlaneMultigraph, map: &[Dart]) -> Result<Drawing> {
        let mut positions = vec![Pt::default(); target.n_vertices()];
        for d in 0..self.graph.n_darts() {
            positions[target.vertex(map[d])] = self.positions[self.graph.vertex(d)];
        }
        let mut chains = Vec::new();
        for e in &self.edges {
            let nd = map[e.darts.0];
            if nd < target.twin(nd) {
                chains.push((nd, e.arcs.clone()));
            } else {
                chains.push((
                    target.twin(nd),
                    e.arcs.iter().rev().map(|a| a.reversed()).collect(),
                ));
            }
        }
        Drawing::new(target.clone(), positions, chains, &self.method, self.eps_deg)
    }
}

// Drawing::new takes the graph by value; a reference-taking helper.
trait DrawingNewRef {
    fn new(
        graph: &PlaneMultigraph,
        positions: Vec<Pt>,
        chains: Vec<(Dart, Vec<CircleArc>)>,
        method: &str,
        eps: Option<f64>,
    ) -> Result<Drawing>;
}

impl DrawingNewRef for Drawing {
    fn new(
        graph: &PlaneMultigraph,
        positions: Vec<Pt>,
        chains: Vec<(Dart, Vec<CircleArc>)>,
        method: &str,
        eps: Option<f64>,
    ) -> Result<Drawing> {
        Drawing::new(graph.clone(), positions, chains, method, eps)
    }
}

/// Arc-angle policy for the packing pipeline: the plain Lombardi bisector
/// (45° everywhere) or the ε-regular variant, where arcs of outgoing
/// medial darts (w.r.t. the checkerboard orientation of the augmented
/// medial graph) tilt by +ε/2 and incoming ones by −ε/2.
#[derive(Debug, Clone, Copy)]
pub enum ArcAngles {
    Bisector,
    EpsRegular { eps_deg: f64, invert: bool },
}

/// Draw `g` through the primal-dual circle packing of its (augmented)
/// simple side.
pub fn draw_via_packing(
    g: &PlaneMultigraph,
    method: &str,
    eps_deg: Option<f64>,
    angles: ArcAngles,
) -> Result<Drawing> {
    let pair0 = primal_dual_of_medial(g)?;
    let pair = if pair0.primal.is_simple() {
        pair0
    } else if pair0.dual.is_simple() {
        pair0.swapped()
    } else {
        return Err(Error::NotApplicable(
            "neither the primal nor the dual is simple".into(),
        ));
    };
    let m0 = &pair.primal;
    let (mp, added) = augment_to_polyhedral(m0)?;
    // Inverted hub: deterministic, prefer high degree for conditioning.
    let w = (0..mp.n_vertices())
        .max_by_key(|&v| (mp.degree(v), usize::MAX - v))
        .unwrap();
    let pk = pack(&mp, w)?;
    if pk.residual >= crate::geom::TOL_PACKING {
        return Err(Error::NoConvergence {
            iterations: 0,
            residual: pk.residual,
        });
    }
    // Per-corner arc angles.
    let corner_angle: Vec<f64> = match angles {
        ArcAngles::Bisector => vec![45.0; mp.n_darts()],
        ArcAngles::EpsRegular { eps_deg, invert } => {
            let fresh = graph::medial_of_primal(&mp)?;
            let out = crate::eps::orient_medial(&fresh)?;
            (0..mp.n_darts())
                .map(|d| {
                    // Fresh medial dart 2d starts at the tangency of
                    // edge(d); outgoing darts tilt counter-clockwise.
                    if out[2 * d] != invert {
                        45.0 + eps_deg / 2.0
                    } else {
                        45.0 - eps_deg / 2.0
                    }
                })
                .collect()
        }
    };
    let mut state = PeelState::new(&mp, &pk, |d| corner_angle[d])?;
    let mut pending: Vec<Dart> = added.clone();
    while let Some(e) = pending.pop() {
        let (next, map) = state.remove_primal_edge(e)?;
        state = next;
        for p in &mut pending {
            *p = map[*p].ok_or_else(|| {
                Error::InvariantViolation("pending augmentation edge vanished".into())
            })?;
            *p = state.m.edge_of(*p);
        }
    }
    if state.m != *m0 {
        return Err(Error::InvariantViolation(
            "peeling did not restore the original primal".into(),
        ));
    }
    // Assemble the medial drawing on g.
    let iso = medial_iso_map(&pair)?; // fresh medial dart -> g dart
    let mut positions = vec![Pt::default(); g.n_vertices()];
    for v in 0..g.n_vertices() {
        let e = pair.primal_edge_of_vertex[v];
        positions[v] = state.tangency[&e];
    }
    let mut chains = Vec::new();
    for d in 0..m0.n_darts() {
        let od = iso[2 * d];
        let arc = state.arcs[&d].arc;
        if od < g.twin(od) {
            chains.push((od, vec![arc]));
        } else {
            chains.push((g.twin(od), vec![arc.reversed()]));
        }
    }
    <Drawing as DrawingNewRef>::new(g, positions, chains, method, eps_deg)
}

/// Plane Lombardi drawing via circle packing (one of M, M' simple).
pub fn draw_simple_side(g: &PlaneMultigraph) -> Result<Drawing> {
    draw_via_packing(g, "lombardi", None, ArcAngles::Bisector)
}

/// Strategy dispatcher for plane Lombardi drawings.
pub fn draw_lombardi(g: &PlaneMultigraph) -> Result<LombardiOutcome> {
    if !g.is_regular(4) || g.has_loop() || !g.is_biconnected() {
        return Err(Error::NotApplicable(
            "need a biconnected loop-free 4-regular plane multigraph".into(),
        ));
    }
    // 1. K4 subgraphs never admit plane Lombardi drawings.
    if let Some((vertices, edges)) = g.find_k4() {
        return Ok(LombardiOutcome::Obstruction(Obstruction::K4 {
            vertices,
            edges,
        }));
    }
    // 2. Known-impossible embeddings (certificate database).
    if let Some((name, reason)) = known_non_lombardi(g) {
        return Ok(LombardiOutcome::Obstruction(Obstruction::Known {
            name,
            reason,
        }));
    }
    draw_lombardi_positive(g)
}

/// The constructive strategies only (no obstruction checks); used by the
/// recursion after decomposition steps.
fn draw_lombardi_positive(g: &PlaneMultigraph) -> Result<LombardiOutcome> {
    // Base: the 2- and 3-vertex multigraphs have closed-form drawings
    // (their primal-dual pairs cannot be packed with a primal hub only).
    if g.n_vertices() <= 3 {
        let base = if g.n_vertices() == 2 {
            crate::drawing::theta4_drawing(0.0)
        } else {
            crate::drawing::triple_base_drawing(0.0)
        };
        let map = graph::embedding_iso_map(&base.graph, g)
            .ok_or_else(|| Error::NotApplicable("unexpected tiny 4-regular graph".into()))?;
        let mut d = base.relabel(g, &map)?;
        d.method = "lombardi".into();
        d.eps_deg = None;
        return Ok(LombardiOutcome::Drawing(d));
    }
    // 3. Packing when one of M, M' is simple.
    let pair = primal_dual_of_medial(g)?;
    if pair.primal.is_simple() || pair.dual.is_simple() {
        return Ok(LombardiOutcome::Drawing(draw_simple_side(g)?));
    }
    // 4. Multilens contraction + re-multiplication.
    if let Some(chain) = g
        .find_multilens()
        .into_iter()
        .filter(|c| c.len() >= 3 && c.first() != c.last())
        .min_by_key(|c| c.clone())
    {
        let (contracted, cmap) = contract_multilens(g, &chain)?;
        if let LombardiOutcome::Drawing(d) = draw_lombardi_positive(&contracted)? {
            let lens = graph::contracted_chain_lens(g, &contracted, &cmap, &chain)?;
            let expanded = lens_multiply_drawing(&d, &lens, chain.len() - 1)?;
            // Re-key onto g.
            let map = graph::embedding_iso_map(&expanded.graph, g).ok_or_else(|| {
                Error::InvariantViolation("re-multiplied graph is not the input".into())
            })?;
            let mut out = expanded.relabel(g, &map)?;
            out.method = "lombardi".into();
            return Ok(LombardiOutcome::Drawing(out));
        }
        return Ok(LombardiOutcome::NotSupported);
    }
    // 5. Knot-sum split at a 2-edge cut.
    if let Some((a, ea, b, eb, ga_darts)) = split_at_two_edge_cut(g) {
        let da = draw_lombardi_positive(&a)?;
        let db = draw_lombardi_positive(&b)?;
        if let (LombardiOutcome::Drawing(da), LombardiOutcome::Drawing(db)) = (da, db) {
            let sum = knot_sum_drawings(&da, ea, &db, eb)?;
            let map = graph::embedding_iso_map(&sum.graph, g).ok_or_else(|| {
                Error::InvariantViolation("re-summed graph is not the input".into())
            })?;
            let _ = ga_darts;
            let mut out = sum.relabel(g, &map)?;
            out.method = "lombardi".into();
            return Ok(LombardiOutcome::Drawing(out));
        }
        return Ok(LombardiOutcome::NotSupported);
    }
    Ok(LombardiOutcome::NotSupported)
}

/// Find a 2-edge cut and undo the knot sum: returns the two summands and
/// the darts of the re-joined edges (the cut edges' A-side and B-side
/// replacements).
pub fn split_at_two_edge_cut(
    g: &PlaneMultigraph,
) -> Option<(PlaneMultigraph, Dart, PlaneMultigraph, Dart, ())> {
    let edges = g.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (edges[i], edges[j]);
            if let Some(result) = try_unsum(g, e, f) {
                return Some((result.0, result.1, result.2, result.3, ()));
            }
        }
    }
    None
}

/// If {e, f} is a 2-edge cut, cut both and reconnect each side.
fn try_unsum(
    g: &PlaneMultigraph,
    e: Dart,
    f: Dart,
) -> Option<(PlaneMultigraph, Dart, PlaneMultigraph, Dart)> {
    // Components of the graph with both edges removed.
    let n = g.n_vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for d in g.edges() {
        if d == e || d == f {
            continue;
        }
        let (u, v) = (g.vertex(d), g.head(d));
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut nc = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = nc;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = nc;
                    stack.push(y);
                }
            }
        }
        nc += 1;
    }
    if nc != 2 {
        return None;
    }
    // The cut edges must straddle the two sides.
    let (e1, e2) = (g.vertex(e), g.head(e));
    let (f1, f2) = (g.vertex(f), g.head(f));
    if comp[e1] == comp[e2] || comp[f1] == comp[f2] {
        return None;
    }
    // Rewire: on side 0, join the side-0 ends of e and f; likewise side 1.
    let (dv, mut tw, rn) = tables_of(g);
    let ends = [e, g.twin(e), f, g.twin(f)];
    let side0: Vec<Dart> = ends.iter().copied().filter(|&d| comp[dv[d]] == 0).collect();
    let side1: Vec<Dart> = ends.iter().copied().filter(|&d| comp[dv[d]] == 1).collect();
    if side0.len() != 2 || side1.len() != 2 {
        return None;
    }
    tw[side0[0]] = side0[1];
    tw[side0[1]] = side0[0];
    tw[side1[0]] = side1[1];
    tw[side1[1]] = side1[0];
    // Split into the two sub-multigraphs by component.
    let mut out = Vec::new();
    for side in 0..2 {
        let keep: Vec<bool> = (0..g.n_darts()).map(|d| comp[dv[d]] == side).collect();
        let mut new_id = vec![usize::MAX; g.n_darts()];
        let mut cnt = 0;
        for d in 0..g.n_darts() {
            if keep[d] {
                new_id[d] = cnt;
                cnt += 1;
            }
        }
        let mut vmap = vec![usize::MAX; n];
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
            ntw.push(new_id[tw[d]]);
            nrn.push(new_id[rn[d]]);
        }
        let sub = PlaneMultigraph::from_permutations(ndv, ntw, nrn).ok()?;
        let joined = new_id[if side == 0 { side0[0] } else { side1[0] }];
        out.push((sub, joined));
    }
    if !out[0].0.is_biconnected() || !out[1].0.is_biconnected() {
        return None;
    }
    let (b, fb) = out.pop().unwrap();
    let (a, fa) = out.pop().unwrap();
    let (ea2, eb2) = (a.edge_of(fa), b.edge_of(fb));
    Some((a, ea2, b, eb2))
}

fn tables_of(g: &PlaneMultigraph) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = g.n_darts();
    (
        (0..n).map(|d| g.vertex(d)).collect(),
        (0..n).map(|d| g.twin(d)).collect(),
        (0..n).map(|d| g.rot_next(d)).collect(),
    )
}

/// Compose two verifier-clean drawings along edges `a` and `b` by
/// straightening both edges through infinity, shrinking each drawing
/// toward its junction, reconnecting with a segment and a through-infinity
/// edge, and finally mapping everything back to finite position.
pub fn knot_sum_drawings(
    da: &Drawing,
    ea: Dart,
    db: &Drawing,
    eb: Dart,
) -> Result<Drawing> {
    let ga = &da.graph;
    let gb = &db.graph;
    let ea = ga.edge_of(ea);
    let eb = gb.edge_of(eb);
    let (gsum, map_a, map_b) = knot_sum(ga, ea, gb, eb)?;
    // Straighten: A's edge maps to the rays beyond [-2,-1], B's beyond [1,2].
    let arc_a = &da.edges[da.edge_index_of(ea)].arcs;
    let arc_b = &db.edges[db.edge_index_of(eb)].arcs;
    if arc_a.len() != 1 || arc_b.len() != 1 {
        return Err(Error::NotApplicable("knot sum needs single-arc edges".into()));
    }
    let c = |p: Pt| p.to_complex();
    let re = |x: f64| Complex64::new(x, 0.0);
    let m_a = Mobius::sending(
        [c(arc_a[0].p), c(arc_a[0].midpoint()), c(arc_a[0].q)],
        [re(-1.0), Complex64::new(f64::INFINITY, f64::INFINITY), re(-2.0)],
    )?;
    let m_b = Mobius::sending(
        [c(arc_b[0].p), c(arc_b[0].midpoint()), c(arc_b[0].q)],
        [re(2.0), Complex64::new(f64::INFINITY, f64::INFINITY), re(1.0)],
    )?;
    // Shrink each straightened drawing toward its anchor segment: the
    // hyperbolic transformation fixing both junction points pulls every
    // other point onto the segment between them, so a strip containment
    // criterion terminates.
    let seg_dist = |p: Pt, x0: f64, x1: f64| -> f64 {
        let t = ((p.x - x0) / (x1 - x0)).clamp(0.0, 1.0);
        p.dist(Pt::new(x0 + t * (x1 - x0), 0.0))
    };
    let fit = |side: &Drawing, skip: Dart, m0: &Mobius, fix: (f64, f64)| -> Result<Mobius> {
        let mut lambda = 1.0f64;
        for _ in 0..80 {
            let g_fix = Mobius::sending(
                [re(fix.0), re(fix.1), Complex64::new(f64::INFINITY, f64::INFINITY)],
                [re(0.0), Complex64::new(f64::INFINITY, f64::INFINITY), re(1.0)],
            )?;
            let h = g_fix
                .inverse()
                .compose(&Mobius::similarity(re(lambda), re(0.0))?)
                .compose(&g_fix);
            let total = h.compose(m0);
            // Measure the image of everything except the straightened edge.
            let mut ok = true;
            'measure: for e in &side.edges {
                if e.darts.0 == skip {
                    continue;
                }
                for arc in &e.arcs {
                    for k in 0..=8 {
                        let t = k as f64 / 8.0;
                        match total.apply_pt(arc.point_at(t)) {
                            Ok(p) => {
                                if seg_dist(p, fix.0, fix.1) > 0.25 {
                                    ok = false;
                                    break 'measure;
                                }
                            }
                            Err(_) => {
                                ok = false;
                                break 'measure;
                            }
                        }
                    }
                }
            }
            if ok {
                return Ok(total);
            }
            lambda /= 2.0;
        }
        Err(Error::AlignmentFailed)
    };
    let total_a = fit(da, ea, &m_a, (-1.0, -2.0))?;
    let total_b = fit(db, eb, &m_b, (1.0, 2.0))?;
    // Finalize off the drawing: send 3i to infinity.
    let m_f = Mobius::new(
        re(0.0),
        re(1.0),
        re(1.0),
        Complex64::new(0.0, -3.0),
    )?;
    let push_a = m_f.compose(&total_a);
    let push_b = m_f.compose(&total_b);
    let na = ga.n_darts();
    let mut positions = vec![Pt::default(); gsum.n_vertices()];
    for v in 0..ga.n_vertices() {
        positions[v] = push_a.apply_pt(da.positions[v])?;
    }
    for v in 0..gb.n_vertices() {
        positions[ga.n_vertices() + v] = push_b.apply_pt(db.positions[v])?;
    }
    let mut chains: Vec<(Dart, Vec<CircleArc>)> = Vec::new();
    for e in &da.edges {
        if e.darts.0 == ea {
            continue;
        }
        let arcs = e
            .arcs
            .iter()
            .map(|a| push_a.apply_arc(a))
            .collect::<Result<Vec<_>>>()?;
        chains.push((map_a[e.darts.0].unwrap(), arcs));
    }
    for e in &db.edges {
        if e.darts.0 == eb {
            continue;
        }
        let arcs = e
            .arcs
            .iter()
            .map(|a| push_b.apply_arc(a))
            .collect::<Result<Vec<_>>>()?;
        chains.push((map_b[e.darts.0].unwrap(), arcs));
    }
    // New edges: c = segment [-1, 1]; d = the complement of [-2, 2] through
    // infinity. In the summed graph, c joins (dart ea) with (twin(eb)+na)
    // and d joins (eb+na) with twin(ea).
    let seg = CircleArc::through(
        m_f.apply_pt(Pt::new(-1.0, 0.0))?,
        m_f.apply_pt(Pt::new(0.0, 0.0))?,
        m_f.apply_pt(Pt::new(1.0, 0.0))?,
    )?;
    let inf_pt = Pt::from_complex(m_f.apply(Complex64::new(f64::INFINITY, f64::INFINITY)));
    let through = CircleArc::through(
        m_f.apply_pt(Pt::new(2.0, 0.0))?,
        inf_pt,
        m_f.apply_pt(Pt::new(-2.0, 0.0))?,
    )?;
    // Orient to the chain keys.
    let c_darts = (ea, gsum.twin(ea));
    let c_key = c_darts.0.min(c_darts.1);
    // chain key = smaller dart; seg runs from vertex(ea) (was at -1).
    if gsum.vertex(c_key) == ga.vertex(ea) {
        chains.push((c_key, vec![seg]));
    } else {
        chains.push((c_key, vec![seg.reversed()]));
    }
    let d_dart_b = eb + na;
    let d_key = d_dart_b.min(gsum.twin(d_dart_b));
    // `through` runs from the old +2 point (vertex(eb)) to -2 (head(ea)).
    if gsum.vertex(d_key) == gb.vertex(eb) + ga.n_vertices() {
        chains.push((d_key, vec![through]));
    } else {
        chains.push((d_key, vec![through.reversed()]));
    }
    <Drawing as DrawingNewRef>::new(
        &gsum,
        positions,
        chains,
        &da.method.clone(),
        match (da.eps_deg, db.eps_deg) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        },
    )
}

/// Subdivide a drawn lens once: new vertex at the midpoint of the
/// bisecting arc, four arcs with the old tangents meeting there.
/// Returns the refined drawing (graph rebuilt to match the geometry).
pub fn subdivide_lens_drawing(d: &Drawing, lens: &Lens) -> Result<(Drawing, Vertex)> {
    // Work in a frame where the lens has unit size at the origin: deep
    // recursions produce drawings whose lenses are tiny relative to their
    // coordinates, and the closure root-find needs full precision.
    let span = d.positions[lens.u].dist(d.positions[lens.v]);
    if !(span.is_finite()) || span <= 0.0 {
        return Err(Error::InvalidSite("degenerate lens span".into()));
    }
    let mid = d.positions[lens.u].lerp(d.positions[lens.v], 0.5);
    let s = 1.0 / span;
    let local = d.scaled(s, -(mid * s));
    let (out, p) = subdivide_lens_drawing_raw(&local, lens)?;
    Ok((out.scaled(span, mid), p))
}

fn subdivide_lens_drawing_raw(d: &Drawing, lens: &Lens) -> Result<(Drawing, Vertex)> {
    let g = &d.graph;
    let (d1, d2) = lens.darts_at_u;
    let chain1 = d.chain_from(d1);
    let chain2 = d.chain_from(d2);
    if chain1.len() != 1 || chain2.len() != 1 {
        return Err(Error::NotApplicable("lens multiplication needs single arcs".into()));
    }
    let e1 = chain1[0];
    let e2 = chain2[0];
    let b = bisector_arc(&e1, &e2)?;
    let u_pos = d.positions[lens.u];
    let v_pos = d.positions[lens.v];
    // Arcs from the same endpoint meet at the angle of their tangents
    // wherever they rejoin, so the two u-side angles and the two v-side
    // angles are exact for any point of b. The subdivision point must also
    // make opposite darts tangent, which pins one angle between a u-side
    // and a v-side arc; solve for that point along the bisector (the
    // arc-length midpoint is exact only for symmetric lenses).
    // The subdivision point must make opposite darts at the new vertex
    // exactly tangent; the u-side and v-side pair angles are automatic for
    // any point of b, leaving one scalar condition along the bisector
    // (solved to evaluation noise; the arc-length midpoint is exact only
    // for symmetric lenses).
    let residual = |t: f64| -> Result<f64> {
        let p = b.point_at(t);
        let a1 = CircleArc::from_tangent(u_pos, p, e1.tangent_at_p())?;
        let a4 = CircleArc::from_tangent(v_pos, p, -e2.tangent_at_q())?;
        let d1 = (-a1.tangent_at_q()).angle();
        let d4 = (-a4.tangent_at_q()).angle();
        Ok(crate::geom::wrap_angle(d4 - d1 - std::f64::consts::PI))
    };
    let golden = 0.618_033_988_749_894_9_f64;
    let (mut lo, mut hi) = (0.02f64, 0.98f64);
    let mut best_t = 0.5;
    let mut best_r = residual(0.5)?.abs();
    for k in 0..=32 {
        let t = lo + (hi - lo) * k as f64 / 32.0;
        if let Ok(r) = residual(t) {
            if r.abs() < best_r {
                best_r = r.abs();
                best_t = t;
            }
        }
    }
    lo = (best_t - 0.05).max(0.0);
    hi = (best_t + 0.05).min(1.0);
    let mut m1 = hi - golden * (hi - lo);
    let mut m2 = lo + golden * (hi - lo);
    let mut f1 = residual(m1)?.abs();
    let mut f2 = residual(m2)?.abs();
    for _ in 0..120 {
        if f1 <= f2 {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - golden * (hi - lo);
            f1 = residual(m1)?.abs();
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + golden * (hi - lo);
            f2 = residual(m2)?.abs();
        }
    }
    let t_star = if f1 < f2 { m1 } else { m2 };
    if residual(t_star)?.abs() > 1e-10 {
        return Err(Error::NoSuchArc(format!(
            "lens closure residual {:.3e} at the best subdivision point",
            residual(t_star)?.abs()
        )));
    }
    let p = b.point_at(t_star);
    let arc_u1 = CircleArc::from_tangent(u_pos, p, e1.tangent_at_p())?;
    let arc_u2 = CircleArc::from_tangent(u_pos, p, e2.tangent_at_p())?;
    let arc_v1 = CircleArc::from_tangent(v_pos, p, -e1.tangent_at_q())?;
    let arc_v2 = CircleArc::from_tangent(v_pos, p, -e2.tangent_at_q())?;
    // Graph: split both edges at a new vertex; rotation at p from the
    // measured tangent angles.
    let n = g.n_darts();
    let nv = g.n_vertices();
    let (mut dv, mut tw, mut rn) = tables_of(g);
    let (t1, t2) = (tw[d1], tw[d2]);
    let (p0, p1, p2, p3) = (n, n + 1, n + 2, n + 3);
    dv.extend_from_slice(&[nv, nv, nv, nv]);
    tw.extend_from_slice(&[0; 4]);
    tw[p0] = d1;
    tw[d1] = p0;
    tw[p1] = t1;
    tw[t1] = p1;
    tw[p2] = d2;
    tw[d2] = p2;
    tw[p3] = t2;
    tw[t2] = p3;
    // Tangents at p of the four new darts.
    let angs = [
        (p0, (-arc_u1.tangent_at_q()).angle()),
        (p1, (-arc_v1.tangent_at_q()).angle()),
        (p2, (-arc_u2.tangent_at_q()).angle()),
        (p3, (-arc_v2.tangent_at_q()).angle()),
    ];
    let mut order = angs;
    order.sort_by(|a, b| a.1.total_cmp(&b.1));
    rn.extend_from_slice(&[0; 4]);
    for i in 0..4 {
        rn[order[i].0] = order[(i + 1) % 4].0;
    }
    let g2 = PlaneMultigraph::from_permutations(dv, tw, rn)?;
    let mut positions = d.positions.clone();
    positions.push(p);
    let mut chains: Vec<(Dart, Vec<CircleArc>)> = Vec::new();
    for e in &d.edges {
        if e.darts.0 == g.edge_of(d1) || e.darts.0 == g.edge_of(d2) {
            continue;
        }
        chains.push((e.darts.0, e.arcs.clone()));
    }
    let mut push_pair = |du: Dart, dp: Dart, arc: CircleArc| {
        // Edge between vertex(du) and p: arc runs from vertex(du) to p.
        let key = du.min(dp);
        if key == du {
            chains.push((key, vec![arc]));
        } else {
            chains.push((key, vec![arc.reversed()]));
        }
    };
    push_pair(d1, p0, arc_u1);
    push_pair(d2, p2, arc_u2);
    push_pair(t1, p1, arc_v1);
    push_pair(t2, p3, arc_v2);
    let out = <Drawing as DrawingNewRef>::new(&g2, positions, chains, &d.method, d.eps_deg)?;
    Ok((out, nv))
}

/// Replace a drawn lens by a chain of `k` lenses (k = 1 returns the
/// drawing unchanged).
pub fn lens_multiply_drawing(d: &Drawing, lens: &Lens, k: usize) -> Result<Drawing> {
    if k == 0 {
        return Err(Error::InvalidSite("lens multiplication needs k >= 1".into()));
    }
    if k == 1 {
        return Ok(d.clone());
    }
    let (sub, p) = subdivide_lens_drawing(d, lens)?;
    // Continue inside the lens between p and lens.v.
    let next = sub
        .graph
        .find_lenses()
        .into_iter()
        .find(|l| (l.u, l.v) == (p.min(lens.v), p.max(lens.v)))
        .ok_or_else(|| Error::InvalidSite("subdivision produced no (p,v) lens".into()))?;
    lens_multiply_drawing(&sub, &next, k - 1)
}

/// Certificate database of embeddings known to admit no plane Lombardi
/// drawing: the 4-crossing and 5-crossing twist-knot shadows, and the
/// vertical-twist family derived from the latter.
pub fn known_non_lombardi(g: &PlaneMultigraph) -> Option<(String, String)> {
    if g.find_k4().is_some() {
        return Some((
            "K4".into(),
            "contains K4 as a subgraph: placement circles force co-circular vertices with incompatible stubs".into(),
        ));
    }
    let five_two = crate::notation::knot("5_2").ok()?.graph;
    if graph::isomorphic_any_orientation(g, &five_two) {
        return Some((
            "5_2".into(),
            "all five vertices are forced co-circular and the outer 4-cycle of arcs must self-intersect".into(),
        ));
    }
    let n = g.n_vertices();
    if n >= 6 {
        if let Ok(member) = generate_family(FamilyKind::VerticalTwist, n - 5) {
            if graph::isomorphic_any_orientation(g, &member) {
                return Some((
                    format!("vertical-twist family (k = {})", n - 5),
                    "embedding family obtained from the 5-crossing twist knot by doubling the bottom vertex and twisting".into(),
                ));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Twist knots 3_1, 4_1, 5_2, 6_1, …: k extra half-twists over the
    /// 3-crossing base (k = 0 is the trefoil shadow).
    Twist,
    /// The non-Lombardi embeddings obtained from 5_2 by splitting its
    /// bottom vertex into a lens and twisting (k = 1 is the 6-vertex
    /// 2-component link, k = 2 the 7-crossing knot member).
    VerticalTwist,
}

/// Deterministic generators for the two knot/link families.
pub fn generate_family(kind: FamilyKind, k: usize) -> Result<PlaneMultigraph> {
    match kind {
        FamilyKind::Twist => match k {
            0 => Ok(graph::builders::triple_doubled()),
            1 => Ok(crate::notation::knot("4_1")?.graph),
            2 => Ok(crate::notation::knot("5_2")?.graph),
            _ => {
                // Extending the twist column multiplies a lens of the
                // 5-crossing member.
                let base = crate::notation::knot("5_2")?.graph;
                let lens = base
                    .find_lenses()
                    .into_iter()
                    .min_by_key(|l| (l.u, l.v))
                    .unwrap();
                let (g, _) = graph::lens_multiplication(&base, &lens, k - 1)?;
                Ok(g)
            }
        },
        FamilyKind::VerticalTwist => {
            if k == 0 {
                return Ok(crate::notation::knot("5_2")?.graph);
            }
            let base = vertical_twist_base()?;
            if k == 1 {
                return Ok(base);
            }
            let lens = newest_lens(&base);
            let (g, _) = graph::lens_multiplication(&base, &lens, k)?;
            Ok(g)
        }
    }
}

/// The 6-vertex member: split a vertex of the 5-crossing twist shadow into
/// a lens such that the result is a 2-component link (the interlinked
/// figure-eights). Deterministic: scan (vertex, dart) choices in order.
fn vertical_twist_base() -> Result<PlaneMultigraph> {
    let five_two = crate::notation::knot("5_2")?.graph;
    for x in 0..five_two.n_vertices() {
        for split in five_two.darts_of(x) {
            if let Ok((g, _, _)) = graph::lens_extension(&five_two, x, split) {
                if g.strand_components().len() == 2 && g.is_biconnected() {
                    return Ok(g);
                }
            }
        }
    }
    Err(Error::NotApplicable(
        "no lens extension of 5_2 yields a 2-component link".into(),
    ))
}

fn newest_lens(g: &PlaneMultigraph) -> Lens {
    // The lens created by the vertex split involves the appended vertex
    // (largest id).
    g.find_lenses()
        .into_iter()
        .max_by_key(|l| (l.u.max(l.v), l.u.min(l.v)))
        .expect("family member has a lens")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify, VerifyMode};

    #[test]
    fn octahedron_draws_lombardi() {
        let g = graph::medial_of_primal(&graph::builders::k4()).unwrap();
        match draw_lombardi(&g).unwrap() {
            LombardiOutcome::Drawing(d) => {
                let r = verify(&d, VerifyMode::Lombardi).unwrap();
                assert!(r.pass(), "{:#?}", r.lines());
                assert!(r.worst("angular-resolution") < 1e-6);
            }
            other => panic!("expected drawing, got {other:?}"),
        }
    }

    #[test]
    fn figure_eight_is_obstructed_by_k4() {
        let g = crate::notation::knot("4_1").unwrap().graph;
        match draw_lombardi(&g).unwrap() {
            LombardiOutcome::Obstruction(Obstruction::K4 { .. }) => {}
            other => panic!("expected a K4 certificate, got {other:?}"),
        }
    }

    #[test]
    fn five_two_is_known_non_lombardi() {
        let g = crate::notation::knot("5_2").unwrap().graph;
        match draw_lombardi(&g).unwrap() {
            LombardiOutcome::Obstruction(Obstruction::Known { name, .. }) => {
                assert_eq!(name, "5_2");
            }
            other => panic!("expected the 5_2 certificate, got {other:?}"),
        }
    }

    #[test]
    fn trefoil_draws_via_triangle_packing() {
        let g = crate::notation::knot("3_1").unwrap().graph;
        match draw_lombardi(&g).unwrap() {
            LombardiOutcome::Drawing(d) => {
                let r = verify(&d, VerifyMode::Lombardi).unwrap();
                assert!(r.pass(), "{:#?}", r.lines());
            }
            other => panic!("expected drawing, got {other:?}"),
        }
    }

    #[test]
    fn theta4_base_case() {
        let g = graph::builders::theta4();
        match draw_lombardi(&g).unwrap() {
            LombardiOutcome::Drawing(d) => {
                assert!(verify(&d, VerifyMode::Lombardi).unwrap().pass());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn twist_family_counts() {
        for (k, n) in [(0usize, 3usize), (3, 6), (4, 7), (5, 8)] {
            let g = generate_family(FamilyKind::Twist, k).unwrap();
            assert_eq!(g.n_vertices(), n);
            assert!(g.is_regular(4));
            assert!(g.is_biconnected());
        }
        // The k=3,4,5 members match the twist knots 6_1, 7_2, 8_1.
        for (k, name) in [(3usize, "6_1"), (4, "7_2"), (5, "8_1")] {
            let fam = generate_family(FamilyKind::Twist, k).unwrap();
            let tab = crate::notation::knot(name).unwrap().graph;
            assert!(
                graph::isomorphic_any_orientation(&fam, &tab),
                "twist({k}) should be the {name} shadow"
            );
        }
    }

    #[test]
    fn vertical_twist_family_structure() {
        let l6 = generate_family(FamilyKind::VerticalTwist, 1).unwrap();
        assert_eq!(l6.n_vertices(), 6);
        assert_eq!(l6.strand_components().len(), 2);
        let seven_five = generate_family(FamilyKind::VerticalTwist, 2).unwrap();
        assert_eq!(seven_five.n_vertices(), 7);
        assert_eq!(seven_five.strand_components().len(), 1, "7-vertex member is a knot");
        // The family embedding differs from the drawable table embedding.
        let table = crate::notation::knot("7_5").unwrap().graph;
        assert!(
            !graph::embedding_isomorphic(&seven_five, &table),
            "family embedding must differ from the alternating diagram"
        );
        // And it is flagged as known non-Lombardi.
        assert!(known_non_lombardi(&seven_five).is_some());
    }

    #[test]
    fn knot_sum_of_trefoils_draws() {
        let t = crate::notation::knot("3_1").unwrap().graph;
        let da = match draw_lombardi(&t).unwrap() {
            LombardiOutcome::Drawing(d) => d,
            _ => panic!(),
        };
        let e = t.edges()[0];
        let sum = knot_sum_drawings(&da, e, &da, e).unwrap();
        assert_eq!(sum.graph.n_vertices(), 6);
        let r = verify(&sum, VerifyMode::Lombardi).unwrap();
        assert!(r.pass(), "{:#?}", r.lines());
    }

    #[test]
    fn lens_multiplication_preserves_lombardi() {
        let d = crate::drawing::theta4_drawing(0.0);
        let lens = d.graph.find_lenses()[0];
        let out = lens_multiply_drawing(&d, &lens, 3).unwrap();
        assert_eq!(out.graph.n_vertices(), 4);
        let r = verify(&out, VerifyMode::Lombardi).unwrap();
        assert!(r.pass(), "{:#?}", r.lines());
        // k = 1 is the identity.
        let same = lens_multiply_drawing(&d, &lens, 1).unwrap();
        assert_eq!(same.graph.n_vertices(), d.graph.n_vertices());
    }
}
