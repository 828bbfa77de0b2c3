use super::{Dart, PlaneMultigraph, Vertex};
use crate::error::Error;
use crate::Result;

/// A primal-dual pair (M, M') together with the medial graph G they came
/// from and the dart correspondences between the three.
///
/// Construction: checkerboard-color the faces of a 4-regular G. The darts
/// whose face has color 0 become the darts of M with rotation `face_next`
/// and twin `rot_next²`; color-1 darts become M'. Medial vertices are the
/// edges of M (equivalently of M'), and each corner of M (a dart d,
/// spanning from d to rot_next(d)) carries one medial edge.
#[derive(Debug, Clone)]
pub struct PrimalDualPair {
    pub primal: PlaneMultigraph,
    pub dual: PlaneMultigraph,
    pub medial: PlaneMultigraph,
    /// g-dart → dart of M (color 0) or M' (color 1).
    pub side_dart: Vec<(u8, Dart)>,
    /// M-dart → g-dart.
    pub g_of_primal: Vec<Dart>,
    /// M'-dart → g-dart.
    pub g_of_dual: Vec<Dart>,
    /// medial vertex (= g vertex) → edge representative dart of M.
    pub primal_edge_of_vertex: Vec<Dart>,
    /// medial vertex → edge representative dart of M'.
    pub dual_edge_of_vertex: Vec<Dart>,
    /// face id of g → (color, vertex id in M or M').
    pub face_owner: Vec<(u8, Vertex)>,
}

fn sub_structure(
    g: &PlaneMultigraph,
    picked: &[Dart],
    face_of: &[usize],
    face_vertex: &[usize],
) -> Result<(PlaneMultigraph, Vec<Dart>)> {
    // picked darts become the darts of the sub-map, densely renumbered.
    let mut idx = vec![usize::MAX; g.n_darts()];
    for (i, &d) in picked.iter().enumerate() {
        idx[d] = i;
    }
    let mut dart_vertex = Vec::with_capacity(picked.len());
    let mut twin = Vec::with_capacity(picked.len());
    let mut rot = Vec::with_capacity(picked.len());
    for &d in picked {
        dart_vertex.push(face_vertex[face_of[d]]);
        let t = g.rot_next(g.rot_next(d));
        // Counter-clockwise rotation of the sub-map is the *inverse* face
        // orbit: with faces on the right, face_next walks bounded faces
        // clockwise.
        let r = g.twin(g.rot_prev(d));
        if idx[t] == usize::MAX || idx[r] == usize::MAX {
            return Err(Error::NotMedialCandidate(
                "checkerboard structure is inconsistent".into(),
            ));
        }
        twin.push(idx[t]);
        rot.push(idx[r]);
    }
    let m = PlaneMultigraph::from_permutations(dart_vertex, twin, rot)?;
    Ok((m, picked.to_vec()))
}

/// Interpret a biconnected 4-regular plane multigraph as the medial graph
/// of a primal-dual pair.
pub fn primal_dual_of_medial(g: &PlaneMultigraph) -> Result<PrimalDualPair> {
    if !g.is_regular(4) {
        return Err(Error::NotMedialCandidate("graph is not 4-regular".into()));
    }
    if g.has_loop() {
        return Err(Error::NotMedialCandidate("graph has a loop".into()));
    }
    if !g.is_biconnected() {
        return Err(Error::NotMedialCandidate("graph is not biconnected".into()));
    }
    let (faces, face_of) = g.face_of_darts();
    let colors = g.checkerboard()?;
    // Dense vertex ids per color.
    let mut face_vertex = vec![usize::MAX; faces.len()];
    let mut face_owner = vec![(0u8, 0usize); faces.len()];
    let mut counts = [0usize; 2];
    for f in 0..faces.len() {
        let c = colors[f];
        face_vertex[f] = counts[c as usize];
        face_owner[f] = (c, counts[c as usize]);
        counts[c as usize] += 1;
    }
    let picked0: Vec<Dart> = (0..g.n_darts()).filter(|&d| colors[face_of[d]] == 0).collect();
    let picked1: Vec<Dart> = (0..g.n_darts()).filter(|&d| colors[face_of[d]] == 1).collect();
    let (primal, g_of_primal) = sub_structure(g, &picked0, &face_of, &face_vertex)?;
    let (dual, g_of_dual) = sub_structure(g, &picked1, &face_of, &face_vertex)?;
    let mut side_dart = vec![(0u8, usize::MAX); g.n_darts()];
    for (i, &d) in g_of_primal.iter().enumerate() {
        side_dart[d] = (0, i);
    }
    for (i, &d) in g_of_dual.iter().enumerate() {
        side_dart[d] = (1, i);
    }
    // Each medial vertex hosts exactly two darts of each color; its primal
    // edge is the M-edge those darts form.
    let mut primal_edge_of_vertex = vec![usize::MAX; g.n_vertices()];
    let mut dual_edge_of_vertex = vec![usize::MAX; g.n_vertices()];
    for d in 0..g.n_darts() {
        let v = g.vertex(d);
        let (c, md) = side_dart[d];
        let slot = if c == 0 {
            &mut primal_edge_of_vertex[v]
        } else {
            &mut dual_edge_of_vertex[v]
        };
        let e = if c == 0 {
            primal.edge_of(md)
        } else {
            dual.edge_of(md)
        };
        if *slot == usize::MAX {
            *slot = e;
        } else if *slot != e {
            return Err(Error::NotMedialCandidate(
                "medial vertex maps to two different primal edges".into(),
            ));
        }
    }
    Ok(PrimalDualPair {
        primal,
        dual,
        medial: g.clone(),
        side_dart,
        g_of_primal,
        g_of_dual,
        primal_edge_of_vertex,
        dual_edge_of_vertex,
        face_owner,
    })
}

/// Medial graph of an embedded multigraph M.
///
/// Medial darts come in pairs per M-dart d: dart `2d` sits at the medial
/// vertex of edge(d) and runs along the corner (d, rot_next(d)); dart
/// `2d+1` is its twin at the medial vertex of edge(rot_next(d)).
pub fn medial_of_primal(m: &PlaneMultigraph) -> Result<PlaneMultigraph> {
    let nd = m.n_darts();
    if nd == 0 {
        return Err(Error::NotMedialCandidate("empty graph".into()));
    }
    // Medial vertex ids: edge rank of M.
    let mut edge_rank = vec![usize::MAX; nd];
    for (i, e) in m.edges().into_iter().enumerate() {
        edge_rank[e] = i;
        edge_rank[m.twin(e)] = i;
    }
    let mut dart_vertex = vec![0usize; 2 * nd];
    let mut twin = vec![0usize; 2 * nd];
    let mut rot = vec![0usize; 2 * nd];
    for d in 0..nd {
        dart_vertex[2 * d] = edge_rank[d];
        dart_vertex[2 * d + 1] = edge_rank[m.rot_next(d)];
        twin[2 * d] = 2 * d + 1;
        twin[2 * d + 1] = 2 * d;
        // Rotation around the medial vertex on edge(d), counter-clockwise:
        // (2d) → (2·rot_prev(d)+1) → (2·twin(d)) → (2·rot_prev(twin d)+1) → …
        rot[2 * d] = 2 * m.rot_prev(d) + 1;
        rot[2 * d + 1] = 2 * m.twin(m.rot_next(d));
    }
    PlaneMultigraph::from_permutations(dart_vertex, twin, rot)
}

/// Medial graph reconstructed from a pair (round-trips with
/// [`primal_dual_of_medial`] up to embedding-preserving isomorphism).
pub fn medial(pair: &PrimalDualPair) -> Result<PlaneMultigraph> {
    medial_of_primal(&pair.primal)
}

/// Dart bijection from `medial_of_primal(pair.primal)` onto the original
/// medial graph, validated structurally.
pub fn medial_iso_map(pair: &PrimalDualPair) -> Result<Vec<Dart>> {
    let g = &pair.medial;
    let nd_m = pair.primal.n_darts();
    let mut map = vec![usize::MAX; 2 * nd_m];
    for md in 0..nd_m {
        // Fresh dart 2md runs along the corner (md, rot_next(md)) of M; in
        // the original medial that is the dart just before g_of_primal[md]
        // in rotation (its face is the dual-side region of that corner).
        let gd = g.rot_prev(pair.g_of_primal[md]);
        map[2 * md] = gd;
        map[2 * md + 1] = g.twin(gd);
    }
    // Validate: map must commute with twin and rotation.
    let fresh = medial_of_primal(&pair.primal)?;
    for d in 0..fresh.n_darts() {
        if map[fresh.twin(d)] != g.twin(map[d]) {
            return Err(Error::NotMedialCandidate("medial iso: twin mismatch".into()));
        }
        if map[fresh.rot_next(d)] != g.rot_next(map[d]) {
            return Err(Error::NotMedialCandidate("medial iso: rotation mismatch".into()));
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::*;
    use crate::graph::{embedding_isomorphic, isomorphic_any_orientation};

    #[test]
    fn medial_of_k4_is_octahedron() {
        let m = medial_of_primal(&k4()).unwrap();
        assert_eq!(m.n_vertices(), 6);
        assert_eq!(m.n_edges(), 12);
        assert_eq!(m.faces().len(), 8);
        assert!(m.is_regular(4));
        assert!(
            isomorphic_any_orientation(&m, &octahedron()),
            "medial(K4) should be the octahedron"
        );
        assert!(
            embedding_isomorphic(&m, &octahedron()),
            "orientation (chirality) of the medial construction is flipped"
        );
    }

    #[test]
    fn medial_of_doubled_path_has_lenses() {
        // 2 vertices, doubled edge: medial = theta-like with lenses.
        let m = from_stars(&[&[0, 1], &[1, 0]]);
        let g = medial_of_primal(&m).unwrap();
        assert!(g.is_regular(4));
        assert_eq!(g.n_vertices(), 2);
        assert!(!g.find_lenses().is_empty(), "parallel primal edges give a lens");
    }

    #[test]
    fn pair_round_trip_on_octahedron() {
        let g = octahedron();
        let pair = primal_dual_of_medial(&g).unwrap();
        // One of M, M' is K4 (by color choice), the other its dual.
        let k4_like = pair.primal.n_vertices() == 4 || pair.dual.n_vertices() == 4;
        assert!(k4_like, "octahedron = medial of (K4, its dual)");
        let rebuilt = medial(&pair).unwrap();
        assert!(embedding_isomorphic(&rebuilt, &g));
        let map = medial_iso_map(&pair).unwrap();
        assert_eq!(map.len(), rebuilt.n_darts());
    }

    #[test]
    fn pair_round_trip_on_multigraphs() {
        for g in [theta4(), triple_doubled(), medial_of_primal(&square_pyramid()).unwrap()] {
            let pair = primal_dual_of_medial(&g).unwrap();
            let rebuilt = medial(&pair).unwrap();
            assert!(embedding_isomorphic(&rebuilt, &g), "round trip failed");
            medial_iso_map(&pair).unwrap();
            // Checkerboard alternation around every medial vertex.
            let (_, face_of) = g.face_of_darts();
            let colors = g.checkerboard().unwrap();
            for v in 0..g.n_vertices() {
                let star = g.darts_of(v);
                for (i, &d) in star.iter().enumerate() {
                    let nxt = star[(i + 1) % star.len()];
                    assert_ne!(colors[face_of[d]], colors[face_of[nxt]]);
                }
            }
        }
    }

    #[test]
    fn medial_of_square_pyramid_shape() {
        // 8 edges → 8 medial vertices; each of the pyramid's 8 edges
        // crosses one dual edge. This medial is an 8-crossing knot shadow.
        let g = medial_of_primal(&square_pyramid()).unwrap();
        assert_eq!(g.n_vertices(), 8);
        assert_eq!(g.n_edges(), 16);
        assert!(g.is_regular(4));
        assert!(g.is_biconnected());
        assert!(g.is_simple());
    }
}
