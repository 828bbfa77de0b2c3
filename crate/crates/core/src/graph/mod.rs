//! Embedded multigraphs as half-edge (dart) structures.
//!
//! A [`PlaneMultigraph`] stores, per dart, its origin vertex, its `twin`
//! (the other half of the same edge) and `rot_next`, the next dart in
//! counter-clockwise order around the origin. Faces are the orbits of
//! `d ↦ rot_next[twin[d]]`; with counter-clockwise rotations a bounded
//! face is traced clockwise, i.e. every dart has its face on the right.
//! Sphere embeddings are validated through the Euler formula, so "outer
//! face" is a per-use choice, not part of the structure.

mod connectivity;
mod diagram;
mod iso;
mod json;
mod medial;
mod surgery;

pub use diagram::KnotDiagram;
pub use json::{load_diagram, load_graph, save_diagram, save_graph};
pub use iso::{canonical_form, embedding_iso_map, embedding_isomorphic, isomorphic_any_orientation};
pub use medial::{medial, medial_iso_map, medial_of_primal, primal_dual_of_medial, PrimalDualPair};
pub use surgery::{
    add_edge_in_face, contract_multilens, contracted_chain_lens, knot_sum, lens_extension,
    lens_multiplication, remove_edge, smooth_vertex, DartMap,
};

use crate::error::Error;
use crate::Result;
use std::collections::BTreeMap;

pub type Dart = usize;
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMultigraph {
    dart_vertex: Vec<Vertex>,
    twin: Vec<Dart>,
    rot_next: Vec<Dart>,
    n_vertices: usize,
}

/// A face bounded by two parallel edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lens {
    pub u: Vertex,
    pub v: Vertex,
    /// The two bounding darts at `u` (one per parallel edge).
    pub darts_at_u: (Dart, Dart),
    pub face: usize,
}

impl PlaneMultigraph {
    pub fn from_permutations(
        dart_vertex: Vec<Vertex>,
        twin: Vec<Dart>,
        rot_next: Vec<Dart>,
    ) -> Result<Self> {
        let n_vertices = dart_vertex.iter().copied().max().map_or(0, |m| m + 1);
        let g = PlaneMultigraph {
            dart_vertex,
            twin,
            rot_next,
            n_vertices,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.twin.len();
        if self.dart_vertex.len() != n || self.rot_next.len() != n {
            return Err(Error::EmbeddingInvalid("table length mismatch".into()));
        }
        if n % 2 != 0 {
            return Err(Error::EmbeddingInvalid("odd dart count".into()));
        }
        for d in 0..n {
            if self.twin[d] >= n || self.rot_next[d] >= n {
                return Err(Error::EmbeddingInvalid("dart index out of range".into()));
            }
            if self.twin[self.twin[d]] != d || self.twin[d] == d {
                return Err(Error::EmbeddingInvalid("twin is not a fixed-point-free involution".into()));
            }
        }
        // rot_next must be a permutation whose orbits are the vertex stars.
        let mut seen = vec![false; n];
        for d in 0..n {
            if self.rot_next[d] >= n {
                return Err(Error::EmbeddingInvalid("rot_next out of range".into()));
            }
            if seen[self.rot_next[d]] {
                return Err(Error::EmbeddingInvalid("rot_next is not a permutation".into()));
            }
            seen[self.rot_next[d]] = true;
        }
        for d in 0..n {
            if self.dart_vertex[self.rot_next[d]] != self.dart_vertex[d] {
                return Err(Error::EmbeddingInvalid(
                    "rot_next leaves the vertex star".into(),
                ));
            }
        }
        // Orbit check: each star is a single cycle.
        let mut orbit = vec![usize::MAX; n];
        for d in 0..n {
            if orbit[d] != usize::MAX {
                continue;
            }
            let mut x = d;
            loop {
                orbit[x] = d;
                x = self.rot_next[x];
                if x == d {
                    break;
                }
            }
        }
        let mut star_rep: Vec<Option<usize>> = vec![None; self.n_vertices];
        for d in 0..n {
            let v = self.dart_vertex[d];
            match star_rep[v] {
                None => star_rep[v] = Some(orbit[d]),
                Some(r) => {
                    if r != orbit[d] {
                        return Err(Error::EmbeddingInvalid(
                            "vertex star splits into several rotation cycles".into(),
                        ));
                    }
                }
            }
        }
        if n > 0 && !self.is_connected() {
            return Err(Error::EmbeddingInvalid("graph is disconnected".into()));
        }
        // Euler check for a sphere embedding.
        if n > 0 {
            let v = self.n_vertices as i64;
            let e = (n / 2) as i64;
            let f = self.faces().len() as i64;
            if v - e + f != 2 {
                return Err(Error::EmbeddingInvalid(format!(
                    "Euler check failed: V-E+F = {}-{}+{} = {}",
                    v,
                    e,
                    f,
                    v - e + f
                )));
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_darts(&self) -> usize {
        self.twin.len()
    }

    pub fn n_edges(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn vertex(&self, d: Dart) -> Vertex {
        self.dart_vertex[d]
    }

    /// Vertex at the far end of the dart.
    pub fn head(&self, d: Dart) -> Vertex {
        self.dart_vertex[self.twin[d]]
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d]
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        self.rot_next[d]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        let mut x = d;
        loop {
            let nx = self.rot_next[x];
            if nx == d {
                return x;
            }
            x = nx;
        }
    }

    /// Next dart along the face to the right of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next[self.twin[d]]
    }

    /// Darts around the vertex of `d` in counter-clockwise order.
    pub fn star(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.rot_next[d];
        while x != d {
            out.push(x);
            x = self.rot_next[x];
        }
        out
    }

    /// Smallest dart id at each vertex (canonical star entry point).
    pub fn vertex_dart(&self, v: Vertex) -> Option<Dart> {
        (0..self.n_darts()).find(|&d| self.dart_vertex[d] == v)
    }

    pub fn darts_of(&self, v: Vertex) -> Vec<Dart> {
        self.vertex_dart(v).map(|d| self.star(d)).unwrap_or_default()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.dart_vertex.iter().filter(|&&x| x == v).count()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n_vertices).all(|v| self.degree(v) == k)
    }

    pub fn has_loop(&self) -> bool {
        (0..self.n_darts()).any(|d| self.vertex(d) == self.head(d))
    }

    /// Canonical edge id: the smaller dart of the twin pair.
    pub fn edge_of(&self, d: Dart) -> Dart {
        d.min(self.twin[d])
    }

    /// One representative dart per edge, ascending.
    pub fn edges(&self) -> Vec<Dart> {
        (0..self.n_darts()).filter(|&d| d < self.twin[d]).collect()
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<Dart> {
        (0..self.n_darts()).find(|&d| d < self.twin[d] && self.vertex(d) == u && self.head(d) == v)
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.edges()
            .iter()
            .filter(|&&d| {
                (self.vertex(d) == u && self.head(d) == v)
                    || (self.vertex(d) == v && self.head(d) == u)
            })
            .count()
    }

    pub fn are_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.multiplicity(u, v) > 0
    }

    /// Faces as dart cycles (orbits of [`Self::face_next`]).
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for d in 0..n {
            if seen[d] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = d;
            loop {
                seen[x] = true;
                cycle.push(x);
                x = self.face_next(x);
                if x == d {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    /// face index per dart, aligned with [`Self::faces`].
    pub fn face_of_darts(&self) -> (Vec<Vec<Dart>>, Vec<usize>) {
        let faces = self.faces();
        let mut face_of = vec![usize::MAX; self.n_darts()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f {
                face_of[d] = i;
            }
        }
        (faces, face_of)
    }

    /// Proper 2-coloring of faces such that faces sharing an edge differ.
    /// The face containing dart 0 gets color 0.
    pub fn checkerboard(&self) -> Result<Vec<u8>> {
        let (faces, face_of) = self.face_of_darts();
        let mut color = vec![u8::MAX; faces.len()];
        if faces.is_empty() {
            return Ok(color);
        }
        let mut stack = vec![face_of[0]];
        color[face_of[0]] = 0;
        while let Some(f) = stack.pop() {
            for &d in &faces[f] {
                let g = face_of[self.twin[d]];
                let want = 1 - color[f];
                if color[g] == u8::MAX {
                    color[g] = want;
                    stack.push(g);
                } else if color[g] != want {
                    return Err(Error::NotBipartiteFaces);
                }
            }
        }
        if color.iter().any(|&c| c == u8::MAX) {
            return Err(Error::NotBipartiteFaces);
        }
        Ok(color)
    }

    /// Closed strand walks through opposite darts (4-regular graphs):
    /// one per link component of the shadow.
    pub fn strand_components(&self) -> Vec<Vec<Dart>> {
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut walks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                walk.push(d);
                seen[d] = true;
                seen[self.twin(d)] = true;
                let t = self.twin(d);
                d = self.rot_next(self.rot_next(t));
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
        walks
    }

    /// All size-2 faces.
    pub fn find_lenses(&self) -> Vec<Lens> {
        let (faces, _) = self.face_of_darts();
        let mut out = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            if f.len() == 2 {
                let d0 = f[0];
                let d1 = f[1];
                // The face cycle's two darts sit at the two endpoints.
                let u = self.vertex(d0);
                let v = self.vertex(d1);
                debug_assert_ne!(u, v, "lens over a loop");
                // Both bounding edges at u: d0 and twin(d1).
                let mut pair = (d0, self.twin[d1]);
                if pair.0 > pair.1 {
                    pair = (pair.1, pair.0);
                }
                out.push(Lens {
                    u: u.min(v),
                    v: u.max(v),
                    darts_at_u: if self.vertex(pair.0) == u.min(v) {
                        pair
                    } else {
                        (self.twin[pair.1], self.twin[pair.0])
                    },
                    face: i,
                });
            }
        }
        out
    }

    /// Maximal chains of lenses u_1 — u_2 — … — u_k (k-1 lenses, k >= 2
    /// vertices). Interior vertices lie on exactly two lenses.
    pub fn find_multilens(&self) -> Vec<Vec<Vertex>> {
        let lenses = self.find_lenses();
        if lenses.is_empty() {
            return Vec::new();
        }
        // adjacency via lenses
        let mut nb: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for l in &lenses {
            nb.entry(l.u).or_default().push(l.v);
            nb.entry(l.v).or_default().push(l.u);
        }
        let mut chains = Vec::new();
        let mut used: BTreeMap<(Vertex, Vertex), bool> = BTreeMap::new();
        for l in &lenses {
            let key = (l.u, l.v);
            if used.contains_key(&key) {
                continue;
            }
            // Walk both directions from this lens.
            let mut chain = vec![l.u, l.v];
            used.insert(key, true);
            loop {
                let last = *chain.last().unwrap();
                let prev = chain[chain.len() - 2];
                let next = nb[&last]
                    .iter()
                    .find(|&&w| w != prev && !used.contains_key(&(w.min(last), w.max(last))));
                match next {
                    Some(&w) => {
                        used.insert((w.min(last), w.max(last)), true);
                        chain.push(w);
                    }
                    None => break,
                }
            }
            chain.reverse();
            loop {
                let last = *chain.last().unwrap();
                let prev = chain[chain.len() - 2];
                let next = nb[&last]
                    .iter()
                    .find(|&&w| w != prev && !used.contains_key(&(w.min(last), w.max(last))));
                match next {
                    Some(&w) => {
                        used.insert((w.min(last), w.max(last)), true);
                        chain.push(w);
                    }
                    None => break,
                }
            }
            chains.push(chain);
        }
        chains
    }

    /// 4-vertex subsets inducing a complete graph, with edge witnesses.
    pub fn find_k4(&self) -> Option<([Vertex; 4], [Dart; 6])> {
        let n = self.n_vertices;
        let adj = |u: Vertex, v: Vertex| self.edge_between(u, v).or(self.edge_between(v, u));
        for a in 0..n {
            for b in a + 1..n {
                let Some(eab) = adj(a, b) else { continue };
                for c in b + 1..n {
                    let (Some(eac), Some(ebc)) = (adj(a, c), adj(b, c)) else {
                        continue;
                    };
                    for d in c + 1..n {
                        if let (Some(ead), Some(ebd), Some(ecd)) = (adj(a, d), adj(b, d), adj(c, d))
                        {
                            return Some(([a, b, c, d], [eab, eac, ebc, ead, ebd, ecd]));
                        }
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::*;

    #[test]
    fn two_vertex_four_edges() {
        let g = theta4();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.n_edges(), 4);
        assert_eq!(g.faces().len(), 4, "Euler: 2-4+F=2");
        assert!(g.is_regular(4));
        let lenses = g.find_lenses();
        assert_eq!(lenses.len(), 4, "every face of the 4-fold parallel pair is a bigon");
        let colors = g.checkerboard().unwrap();
        // Around each vertex colors alternate: every vertex sees both colors twice.
        let (_, face_of) = g.face_of_darts();
        for v in 0..2 {
            let star = g.darts_of(v);
            for (i, &d) in star.iter().enumerate() {
                let next = star[(i + 1) % star.len()];
                assert_ne!(colors[face_of[d]], colors[face_of[next]]);
            }
        }
    }

    #[test]
    fn octahedron_shape() {
        let g = octahedron();
        assert_eq!(g.n_vertices(), 6);
        assert_eq!(g.n_edges(), 12);
        assert_eq!(g.faces().len(), 8);
        assert!(g.is_regular(4));
        assert!(g.find_lenses().is_empty());
        assert!(g.checkerboard().is_ok());
        assert!(g.find_k4().is_none(), "octahedron has no K4");
    }

    #[test]
    fn k4_detection() {
        let g = k4();
        assert!(g.find_k4().is_some());
    }
}

pub mod builders {
    //! Hand-built example graphs used by tests and generators.
    use super::*;

    /// Builder taking counter-clockwise star lists of edge-end labels.
    /// Each label must appear exactly twice overall (once per edge end).
    pub fn from_stars(stars: &[&[usize]]) -> PlaneMultigraph {
        let mut dart_vertex = Vec::new();
        let mut order = Vec::new();
        for (v, star) in stars.iter().enumerate() {
            for &e in star.iter() {
                dart_vertex.push(v);
                order.push(e);
            }
        }
        let n = dart_vertex.len();
        let mut twin = vec![usize::MAX; n];
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for d in 0..n {
            match first.get(&order[d]) {
                None => {
                    first.insert(order[d], d);
                }
                Some(&o) => {
                    assert_eq!(twin[o], usize::MAX, "edge label {} used 3 times", order[d]);
                    twin[o] = d;
                    twin[d] = o;
                }
            }
        }
        assert!(twin.iter().all(|&t| t != usize::MAX), "unmatched edge label");
        let mut rot_next = vec![0; n];
        let mut base = 0;
        for star in stars.iter() {
            let k = star.len();
            for i in 0..k {
                rot_next[base + i] = base + (i + 1) % k;
            }
            base += k;
        }
        PlaneMultigraph::from_permutations(dart_vertex, twin, rot_next)
            .expect("builder graph must be valid")
    }

    /// Two vertices joined by four parallel edges.
    pub fn theta4() -> PlaneMultigraph {
        // CCW at u: e0,e1,e2,e3; at v the reverse order gives a planar embedding.
        from_stars(&[&[0, 1, 2, 3], &[3, 2, 1, 0]])
    }

    /// Three vertices, each pair joined by two parallel edges.
    pub fn triple_doubled() -> PlaneMultigraph {
        // Vertices a,b,c around a triangle; each side doubled.
        from_stars(&[&[0, 1, 5, 4], &[2, 3, 1, 0], &[4, 5, 3, 2]])
    }

    /// K4 with its planar rotation system (outer triangle 0,1,2; 3 inside).
    pub fn k4() -> PlaneMultigraph {
        // Edges: 01=0, 03=1, 02=2, 12=3, 13=4, 23=5.
        from_stars(&[
            &[0, 1, 2], // v0: to 1, to 3, to 2
            &[0, 3, 4], // v1: to 0, to 2, to 3
            &[3, 2, 5], // v2: to 1, to 0, to 3
            &[1, 4, 5], // v3: to 0, to 1, to 2
        ])
    }

    /// Octahedron: ring 1,2,3,4 with center 0 and outer vertex 5.
    pub fn octahedron() -> PlaneMultigraph {
        // center spokes a_i = 0..3, ring r12=4, r23=5, r34=6, r41=7,
        // outer spokes b_i = 8..11.
        from_stars(&[
            &[0, 1, 2, 3],   // v0 center: to 1(E),2(N),3(W),4(S)
            &[8, 4, 0, 7],   // v1 east
            &[9, 5, 1, 4],   // v2 north
            &[2, 5, 10, 6],  // v3 west
            &[7, 3, 6, 11],  // v4 south
            &[8, 11, 10, 9], // v5 outer
        ])
    }

    /// Square pyramid (wheel W4): the primal graph that augments the
    /// 5-crossing torus knot shadow to a polyhedral graph.
    pub fn square_pyramid() -> PlaneMultigraph {
        // apex 4; rim 0,1,2,3. Rim edges 0..3, spokes 4..7.
        from_stars(&[
            &[0, 4, 3],    // v0 (1,0): to 1, apex, to 3
            &[1, 5, 0],    // v1 (0,1)
            &[2, 6, 1],    // v2 (-1,0)
            &[3, 7, 2],    // v3 (0,-1)
            &[4, 5, 6, 7], // apex
        ])
    }
}
