use super::{Dart, Lens, PlaneMultigraph, Vertex};
use crate::error::Error;
use crate::Result;

/// Dart relabeling that accompanies a surgery: `old → Some(new)` for
/// surviving darts.
pub type DartMap = Vec<Option<Dart>>;

fn identity_map(n: usize) -> DartMap {
    (0..n).map(Some).collect()
}

impl PlaneMultigraph {
    /// Raw tables (used by surgery to build modified copies).
    fn tables(&self) -> (Vec<Vertex>, Vec<Dart>, Vec<Dart>) {
        let n = self.n_darts();
        let mut dv = Vec::with_capacity(n);
        let mut tw = Vec::with_capacity(n);
        let mut rn = Vec::with_capacity(n);
        for d in 0..n {
            dv.push(self.vertex(d));
            tw.push(self.twin(d));
            rn.push(self.rot_next(d));
        }
        (dv, tw, rn)
    }
}

/// Add an edge inside the face of `da` and `db`, joining the face's
/// corners at those darts. With faces on the right, the corner of
/// `face_of(d)` at `vertex(d)` is the rotation wedge (rot_prev(d), d).
/// New darts are appended, existing ids stay stable.
pub fn add_edge_in_face(g: &PlaneMultigraph, da: Dart, db: Dart) -> Result<(PlaneMultigraph, Dart, Dart)> {
    let (_, face_of) = g.face_of_darts();
    if face_of[da] != face_of[db] || da == db {
        return Err(Error::InvalidSite("corners are not on a common face".into()));
    }
    let (mut dv, mut tw, mut rn) = g.tables();
    let n = g.n_darts();
    let (na, nb) = (n, n + 1);
    let pa = g.rot_prev(da);
    let pb = g.rot_prev(db);
    dv.push(g.vertex(da));
    dv.push(g.vertex(db));
    tw.push(nb);
    tw.push(na);
    rn.push(da); // rot_next of na
    rn.push(db); // rot_next of nb
    rn[pa] = na;
    rn[pb] = nb;
    let out = PlaneMultigraph::from_permutations(dv, tw, rn)?;
    Ok((out, na, nb))
}

/// Remove the edge of dart `e`; surviving darts are renumbered densely.
pub fn remove_edge(g: &PlaneMultigraph, e: Dart) -> Result<(PlaneMultigraph, DartMap)> {
    let t = g.twin(e);
    let (dv, tw, rn) = g.tables();
    let n = g.n_darts();
    let mut keep: Vec<bool> = vec![true; n];
    keep[e] = false;
    keep[t] = false;
    // Bypass in rotations.
    let mut rn = rn;
    for d in [e, t] {
        let prev = g.rot_prev(d);
        if prev == d {
            return Err(Error::InvalidSite("removing the last dart of a vertex".into()));
        }
        rn[prev] = rn[d];
    }
    rebuild(&dv, &tw, &rn, &keep, None)
}

fn rebuild(
    dv: &[Vertex],
    tw: &[Dart],
    rn: &[Dart],
    keep: &[bool],
    vertex_map: Option<&[Option<Vertex>]>,
) -> Result<(PlaneMultigraph, DartMap)> {
    let n = dv.len();
    let mut map: DartMap = vec![None; n];
    let mut next = 0;
    for d in 0..n {
        if keep[d] {
            map[d] = Some(next);
            next += 1;
        }
    }
    // Dense vertex ids.
    let mut vmap: Vec<Option<Vertex>> = match vertex_map {
        Some(vm) => vm.to_vec(),
        None => vec![None; dv.iter().copied().max().map_or(0, |m| m + 1)],
    };
    if vertex_map.is_none() {
        let mut nv = 0;
        for d in 0..n {
            if keep[d] && vmap[dv[d]].is_none() {
                vmap[dv[d]] = Some(nv);
                nv += 1;
            }
        }
    }
    let mut ndv = Vec::with_capacity(next);
    let mut ntw = Vec::with_capacity(next);
    let mut nrn = Vec::with_capacity(next);
    for d in 0..n {
        if !keep[d] {
            continue;
        }
        ndv.push(vmap[dv[d]].ok_or_else(|| Error::InvalidSite("vertex dropped".into()))?);
        ntw.push(map[tw[d]].ok_or_else(|| Error::InvalidSite("twin dropped".into()))?);
        nrn.push(map[rn[d]].ok_or_else(|| Error::InvalidSite("rot dropped".into()))?);
    }
    let g = PlaneMultigraph::from_permutations(ndv, ntw, nrn)?;
    Ok((g, map))
}

/// Replace a lens by a chain of `k` lenses (k = 1 is the identity).
/// Returns the new graph and the chain vertices from `lens.u` to `lens.v`.
pub fn lens_multiplication(
    g: &PlaneMultigraph,
    lens: &Lens,
    k: usize,
) -> Result<(PlaneMultigraph, Vec<Vertex>)> {
    if k == 0 {
        return Err(Error::InvalidSite("lens multiplication needs k >= 1".into()));
    }
    if k == 1 {
        return Ok((g.clone(), vec![lens.u, lens.v]));
    }
    // Subdivide the lens once by a new degree-4 vertex, then recurse.
    let (d1, d2) = lens.darts_at_u;
    if g.vertex(d1) != lens.u || g.vertex(d2) != lens.u {
        return Err(Error::InvalidSite("lens darts do not match".into()));
    }
    let (dv, tw, rn) = g.tables();
    let n = g.n_darts();
    let nv = g.n_vertices();
    // New vertex p with 4 darts: toward u twice, toward v twice.
    // Original edges: e1 = (d1, t1), e2 = (d2, t2). After subdivision:
    // e1 splits into (d1 ↔ p0) and (p1 ↔ t1); e2 into (d2 ↔ p2), (p3 ↔ t2).
    let (t1, t2) = (tw[d1], tw[d2]);
    let mut dv = dv;
    let mut tw = tw;
    let mut rn = rn;
    let p = nv;
    let p0 = n;
    let p1 = n + 1;
    let p2 = n + 2;
    let p3 = n + 3;
    dv.extend_from_slice(&[p, p, p, p]);
    tw.extend_from_slice(&[0, 0, 0, 0]);
    tw[p0] = d1;
    tw[d1] = p0;
    tw[p1] = t1;
    tw[t1] = p1;
    tw[p2] = d2;
    tw[d2] = p2;
    tw[p3] = t2;
    tw[t2] = p3;
    // Rotation at p: the two u-side darts (p0, p2) bound the new lens
    // (u,p), so they are adjacent; likewise (p1, p3) bound (p,v). Scan the
    // cyclic orders and keep the one that embeds with exactly the two new
    // lenses present.
    rn.extend_from_slice(&[0, 0, 0, 0]);
    let orders: [[Dart; 4]; 6] = [
        [p0, p2, p3, p1],
        [p0, p2, p1, p3],
        [p0, p1, p2, p3],
        [p0, p1, p3, p2],
        [p0, p3, p1, p2],
        [p0, p3, p2, p1],
    ];
    let mut sub = None;
    for ord in orders {
        for i in 0..4 {
            rn[ord[i]] = ord[(i + 1) % 4];
        }
        if let Ok(h) = PlaneMultigraph::from_permutations(dv.clone(), tw.clone(), rn.clone()) {
            let lenses = h.find_lenses();
            let has = |a: Vertex, b: Vertex| {
                lenses.iter().any(|l| (l.u, l.v) == (a.min(b), a.max(b)))
            };
            if has(lens.u, p) && has(p, lens.v) {
                sub = Some(h);
                break;
            }
        }
    }
    let sub = sub.ok_or_else(|| Error::InvalidSite("no planar subdivision rotation".into()))?;
    debug_assert!(sub.is_regular(4));
    // Continue multiplying inside the new lens between p and lens.v.
    let next = sub
        .find_lenses()
        .into_iter()
        .find(|l| (l.u, l.v) == (p.min(lens.v), p.max(lens.v)))
        .ok_or_else(|| Error::InvalidSite("subdivision produced no lens at p".into()))?;
    let (fin, mut chain) = lens_multiplication(&sub, &next, k - 1)?;
    if chain.first() == Some(&p) {
        chain.insert(0, lens.u);
    } else {
        chain.push(lens.u);
        chain.reverse();
    }
    Ok((fin, chain))
}

/// Replace vertex `x` by a lens: remove x, add vertices u,v joined by a
/// double edge, with u taking over the consecutive dart pair
/// (split, rot_next(split)) of x and v the other two darts.
pub fn lens_extension(
    g: &PlaneMultigraph,
    x: Vertex,
    split: Dart,
) -> Result<(PlaneMultigraph, Vertex, Vertex)> {
    if g.vertex(split) != x || g.degree(x) != 4 {
        return Err(Error::InvalidSite("split dart must leave a 4-valent x".into()));
    }
    let a = split;
    let b = g.rot_next(a);
    let c = g.rot_next(b);
    let d = g.rot_next(c);
    // u keeps (a, b); v keeps (c, d); two new parallel edges join u and v.
    let (mut dv, mut tw, mut rn) = g.tables();
    let n = g.n_darts();
    let nv = g.n_vertices();
    let (u, v) = (x, nv); // reuse x's id for u, append v
    let (u1, u2, v1, v2) = (n, n + 1, n + 2, n + 3);
    dv.extend_from_slice(&[u, u, v, v]);
    dv[c] = v;
    dv[d] = v;
    tw.extend_from_slice(&[0; 4]);
    tw[u1] = v1;
    tw[v1] = u1;
    tw[u2] = v2;
    tw[v2] = u2;
    rn.extend_from_slice(&[0; 4]);
    // Around u (ccw): a, b, u1, u2 — lens darts fill the gap left by c,d.
    rn[a] = b;
    rn[b] = u1;
    rn[u1] = u2;
    rn[u2] = a;
    // Around v (ccw): c, d, v?… the lens edges return on the far side:
    // v's star is c, d, v1, v2 with the pairing (u1↔v1, u2↔v2) nesting so
    // that the two new faces are the lens and two quadrilateral corners.
    rn[c] = d;
    rn[d] = v2;
    rn[v2] = v1;
    rn[v1] = c;
    let out = PlaneMultigraph::from_permutations(dv, tw, rn)?;
    Ok((out, u, v))
}

/// Knot sum: cut edge `ea` of `a` and edge `eb` of `b` open and glue the
/// loose ends pairwise. Orientation: head(ea) connects to vertex(eb) and
/// head(eb) to vertex(ea). Vertices/darts of `b` are appended after `a`'s.
pub fn knot_sum(
    a: &PlaneMultigraph,
    ea: Dart,
    b: &PlaneMultigraph,
    eb: Dart,
) -> Result<(PlaneMultigraph, DartMap, DartMap)> {
    let (adv, atw, arn) = a.tables();
    let (bdv, btw, brn) = b.tables();
    let na = a.n_darts();
    let va = a.n_vertices();
    let mut dv = adv;
    let mut tw = atw;
    let mut rn = arn;
    dv.extend(bdv.iter().map(|&v| v + va));
    tw.extend(btw.iter().map(|&d| d + na));
    rn.extend(brn.iter().map(|&d| d + na));
    let ta = a.twin(ea);
    let eb2 = eb + na;
    let tb = b.twin(eb) + na;
    // Re-pair: (ea ~ tb) and (eb2 ~ ta): the strand leaving vertex(ea)
    // along ea now runs to head(eb), preserving both rotations.
    tw[ea] = tb;
    tw[tb] = ea;
    tw[eb2] = ta;
    tw[ta] = eb2;
    let g = PlaneMultigraph::from_permutations(dv, tw, rn)?;
    let map_a = identity_map(na);
    let map_b: DartMap = (0..b.n_darts()).map(|d| Some(d + na)).collect();
    Ok((g, map_a, map_b))
}

/// The lens of the contracted graph that replaced a chain: locate it via
/// the dart map and the chain's end vertices.
pub fn contracted_chain_lens(
    g: &PlaneMultigraph,
    contracted: &PlaneMultigraph,
    map: &DartMap,
    chain: &[Vertex],
) -> Result<Lens> {
    let find_new_vertex = |v: Vertex| -> Result<Vertex> {
        for d in g.darts_of(v) {
            if let Some(nd) = map[d] {
                return Ok(contracted.vertex(nd));
            }
        }
        Err(Error::InvalidSite(format!("vertex {v} vanished in contraction")))
    };
    let u = find_new_vertex(chain[0])?;
    let w = find_new_vertex(*chain.last().unwrap())?;
    contracted
        .find_lenses()
        .into_iter()
        .find(|l| (l.u, l.v) == (u.min(w), u.max(w)))
        .ok_or_else(|| Error::InvalidSite("contracted chain lost its lens".into()))
}

/// Contract a multilens chain u_1 … u_k down to a single lens (u_1, u_k):
/// interior vertices are removed and replaced by two parallel edges.
pub fn contract_multilens(
    g: &PlaneMultigraph,
    chain: &[Vertex],
) -> Result<(PlaneMultigraph, DartMap)> {
    if chain.len() < 3 {
        return Err(Error::InvalidSite("multilens chain needs >= 3 vertices".into()));
    }
    let (u, w) = (chain[0], *chain.last().unwrap());
    // Darts of u toward chain[1] and of w toward chain[k-2] survive and get
    // re-paired; everything strictly inside goes away.
    let interior: Vec<Vertex> = chain[1..chain.len() - 1].to_vec();
    let is_interior = |v: Vertex| interior.contains(&v);
    let (dv, tw, rn) = g.tables();
    let n = g.n_darts();
    let mut keep = vec![true; n];
    for d in 0..n {
        if is_interior(dv[d]) || is_interior(g.head(d)) {
            keep[d] = false;
        }
    }
    // u's two darts toward chain[1] must be re-twinned with w's two darts
    // toward chain[k-2], preserving the planar sides. Each side of the
    // chain is a single face; it contains one dart out of u along the chain
    // and the twin of one dart out of w.
    let u_darts: Vec<Dart> = g
        .darts_of(u)
        .into_iter()
        .filter(|&d| g.head(d) == chain[1])
        .collect();
    let w_darts: Vec<Dart> = g
        .darts_of(w)
        .into_iter()
        .filter(|&d| g.head(d) == chain[chain.len() - 2])
        .collect();
    if u_darts.len() != 2 || w_darts.len() != 2 {
        return Err(Error::InvalidSite("chain ends are not doubled".into()));
    }
    let mut tw = tw;
    let mut pairs = Vec::new();
    for &ud in &u_darts {
        // Walk one side of the chain: entering an interior vertex via
        // twin(x), continue on the neighbouring dart that is not the bigon
        // partner of twin(x).
        let mut x = ud;
        for _ in 1..chain.len() - 1 {
            let t = g.twin(x);
            let here = g.vertex(t);
            let partner = g
                .darts_of(here)
                .into_iter()
                .find(|&p| p != t && g.head(p) == g.head(t))
                .ok_or_else(|| Error::InvalidSite("chain vertex lost its double".into()))?;
            let fwd = if g.rot_next(t) == partner {
                g.rot_prev(t)
            } else {
                g.rot_next(t)
            };
            x = fwd;
        }
        let wd = g.twin(x);
        if g.vertex(wd) != w || g.head(wd) != chain[chain.len() - 2] {
            return Err(Error::InvalidSite("chain side walk left the chain".into()));
        }
        pairs.push((ud, wd));
    }
    if pairs[0].0 == pairs[1].0 || pairs[0].1 == pairs[1].1 {
        return Err(Error::InvalidSite("ambiguous chain side matching".into()));
    }
    for &(ud, wd) in &pairs {
        keep[ud] = true;
        keep[wd] = true;
        tw[ud] = wd;
        tw[wd] = ud;
    }
    // Fix rotations: interior darts of u/w stars were already only the
    // chain darts (kept); nothing else changes at u and w.
    let mut rn = rn;
    for v in 0..g.n_vertices() {
        if is_interior(v) {
            continue;
        }
        // Rebuild this vertex's rotation skipping dropped darts.
        let star = g.darts_of(v);
        let kept: Vec<Dart> = star.iter().copied().filter(|&d| keep[d]).collect();
        if kept.is_empty() {
            return Err(Error::InvalidSite("vertex lost all darts".into()));
        }
        for i in 0..kept.len() {
            rn[kept[i]] = kept[(i + 1) % kept.len()];
        }
    }
    rebuild(&dv, &tw, &rn, &keep, None)
}

/// Remove a 4-valent vertex by merging adjacent dart pairs: the pair
/// (d, rot_next d) becomes one edge joining their far endpoints, and the
/// remaining pair (rot²d, rot³d) the other. This is the planar smoothing
/// used when a primal edge is peeled: `d` selects which corners merge.
pub fn smooth_vertex(g: &PlaneMultigraph, x: Vertex, d: Dart) -> Result<(PlaneMultigraph, DartMap)> {
    let star = g.star(d);
    if star.len() != 4 || g.vertex(d) != x {
        return Err(Error::InvalidSite("smoothing needs a 4-valent vertex".into()));
    }
    let (dv, mut tw, mut rn) = g.tables();
    let n = g.n_darts();
    let mut keep = vec![true; n];
    for &s in &star {
        keep[s] = false;
    }
    // Join twin(star[0]) with twin(star[1]), twin(star[2]) with twin(star[3]).
    for i in [0, 2] {
        let a = g.twin(star[i]);
        let b = g.twin(star[i + 1]);
        if a == star[i + 1] || b == star[i] {
            return Err(Error::InvalidSite("smoothing a loop at x".into()));
        }
        tw[a] = b;
        tw[b] = a;
    }
    for v in 0..g.n_vertices() {
        if v == x {
            continue;
        }
        let star_v = g.darts_of(v);
        let kept: Vec<Dart> = star_v.iter().copied().filter(|&d| keep[d]).collect();
        for i in 0..kept.len() {
            rn[kept[i]] = kept[(i + 1) % kept.len()];
        }
    }
    rebuild(&dv, &tw, &rn, &keep, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::*;

    #[test]
    fn add_edge_splits_face() {
        let g = square_pyramid();
        // Outer face of the pyramid is the rim 4-cycle; chord it.
        let (faces, _) = g.face_of_darts();
        let quad = faces.iter().find(|f| f.len() == 4).unwrap().clone();
        let f0 = faces.len();
        let (h, _, _) = add_edge_in_face(&g, quad[0], quad[2]).unwrap();
        assert_eq!(h.n_edges(), g.n_edges() + 1);
        assert_eq!(h.faces().len(), f0 + 1);
        assert!(h.is_polyhedral());
    }

    #[test]
    fn remove_edge_round_trip() {
        let g = square_pyramid();
        let (faces, _) = g.face_of_darts();
        let quad = faces.iter().find(|f| f.len() == 4).unwrap().clone();
        let (h, na, _) = add_edge_in_face(&g, quad[0], quad[2]).unwrap();
        let (back, _) = remove_edge(&h, na).unwrap();
        assert!(crate::graph::embedding_isomorphic(&back, &g));
    }

    #[test]
    fn lens_multiplication_identity_and_growth() {
        let g = theta4();
        let lens = g.find_lenses()[0];
        let (h, chain) = lens_multiplication(&g, &lens, 1).unwrap();
        assert!(crate::graph::embedding_isomorphic(&h, &g));
        assert_eq!(chain.len(), 2);
        let (h3, chain3) = lens_multiplication(&g, &lens, 3).unwrap();
        assert_eq!(h3.n_vertices(), g.n_vertices() + 2);
        assert_eq!(chain3.len(), 4);
        assert!(h3.is_regular(4));
        assert!(h3.is_biconnected());
        // The chain is a multilens.
        let chains = h3.find_multilens();
        assert!(chains.iter().any(|c| c.len() >= 3));
    }

    #[test]
    fn multilens_contract_inverts_multiplication() {
        let g = theta4();
        let lens = g.find_lenses()[0];
        let (h, chain) = lens_multiplication(&g, &lens, 4).unwrap();
        let (back, _) = contract_multilens(&h, &chain).unwrap();
        assert!(crate::graph::embedding_isomorphic(&back, &g));
    }

    #[test]
    fn lens_extension_grows_and_smooths_back() {
        let g = triple_doubled();
        let x = 0;
        let split = g.darts_of(x)[0];
        let (h, u, v) = lens_extension(&g, x, split).unwrap();
        assert_eq!(h.n_vertices(), g.n_vertices() + 1);
        assert!(h.is_regular(4));
        assert!(h.is_biconnected());
        assert!(h
            .find_lenses()
            .iter()
            .any(|l| (l.u, l.v) == (u.min(v), u.max(v))));
    }

    #[test]
    fn knot_sum_counts() {
        let a = triple_doubled();
        let b = triple_doubled();
        let ea = a.edges()[0];
        let eb = b.edges()[0];
        let (g, _, _) = knot_sum(&a, ea, &b, eb).unwrap();
        assert_eq!(g.n_vertices(), 6);
        assert_eq!(g.n_edges(), 12);
        assert!(g.is_regular(4));
        assert!(g.is_biconnected());
        assert_eq!(g.faces().len(), 8, "Euler: 6-12+F=2");
    }

    #[test]
    fn smooth_vertex_reduces() {
        let g = crate::graph::medial_of_primal(&square_pyramid()).unwrap();
        let n = g.n_vertices();
        let d = g.vertex_dart(0).unwrap();
        let (h, _) = smooth_vertex(&g, 0, d).unwrap();
        assert_eq!(h.n_vertices(), n - 1);
        assert!(h.is_regular(4));
    }
}
