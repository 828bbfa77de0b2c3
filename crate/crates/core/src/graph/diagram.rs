use super::{Dart, PlaneMultigraph, Vertex};
use crate::error::Error;
use crate::Result;
use std::collections::BTreeMap;

/// A knot or link diagram: a 4-regular shadow plus, per crossing, which of
/// the two opposite strand pairs passes over.
///
/// The over pair is stored as an index: 0 selects the pair containing the
/// vertex's smallest dart id, 1 the other pair. Layout algorithms ignore
/// this data entirely; it resurfaces when rendering under-strand gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    pub graph: PlaneMultigraph,
    pub over: BTreeMap<Vertex, u8>,
}

impl KnotDiagram {
    pub fn new(graph: PlaneMultigraph, over: BTreeMap<Vertex, u8>) -> Result<Self> {
        if !graph.is_regular(4) {
            return Err(Error::EmbeddingInvalid("diagram shadow must be 4-regular".into()));
        }
        if graph.has_loop() {
            return Err(Error::LoopOrCutVertex("shadow has a loop".into()));
        }
        if !graph.is_biconnected() {
            return Err(Error::LoopOrCutVertex("shadow has a cut vertex".into()));
        }
        for v in 0..graph.n_vertices() {
            match over.get(&v) {
                Some(0) | Some(1) => {}
                _ => {
                    return Err(Error::EmbeddingInvalid(format!(
                        "vertex {v} lacks an over-strand flag"
                    )))
                }
            }
        }
        Ok(KnotDiagram { graph, over })
    }

    /// The two darts of the over strand at `v` (an opposite pair).
    pub fn over_pair(&self, v: Vertex) -> (Dart, Dart) {
        let star = self.star_from_min(v);
        match self.over[&v] {
            0 => (star[0], star[2]),
            _ => (star[1], star[3]),
        }
    }

    pub fn under_pair(&self, v: Vertex) -> (Dart, Dart) {
        let star = self.star_from_min(v);
        match self.over[&v] {
            0 => (star[1], star[3]),
            _ => (star[0], star[2]),
        }
    }

    /// Star of `v` in rotation order beginning at the smallest dart id.
    fn star_from_min(&self, v: Vertex) -> Vec<Dart> {
        let darts = self.graph.darts_of(v);
        let min = *darts.iter().min().unwrap();
        self.graph.star(min)
    }

    /// Per-dart over flags (true = dart belongs to the over strand).
    pub fn over_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.graph.n_darts()];
        for v in 0..self.graph.n_vertices() {
            let (a, b) = self.over_pair(v);
            flags[a] = true;
            flags[b] = true;
        }
        flags
    }

    pub fn shadow(&self) -> &PlaneMultigraph {
        &self.graph
    }

    /// Equivalent diagrams up to relabeling (optionally mirrored).
    pub fn isomorphic(&self, other: &KnotDiagram, allow_reflection: bool) -> bool {
        if self.graph.n_darts() != other.graph.n_darts() {
            return false;
        }
        super::iso::canonical_form(&self.graph, allow_reflection, Some(&self.over_flags()))
            == super::iso::canonical_form(&other.graph, allow_reflection, Some(&other.over_flags()))
    }

    /// Strand successor: entering a crossing along `d`, leave on the
    /// opposite dart.
    pub fn strand_next(&self, d: Dart) -> Dart {
        let t = self.graph.twin(d);
        self.graph.rot_next(self.graph.rot_next(t))
    }

    /// Closed strand walks (one per link component), as dart sequences.
    /// Each edge is traversed once per walk direction; walks come in
    /// orientation pairs, of which one representative is returned.
    pub fn components(&self) -> Vec<Vec<Dart>> {
        self.graph.strand_components()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::*;

    #[test]
    fn theta4_is_a_two_crossing_link_shadow() {
        let g = theta4();
        let over: BTreeMap<usize, u8> = [(0, 0), (1, 1)].into();
        let d = KnotDiagram::new(g, over).unwrap();
        let comps = d.components();
        assert_eq!(comps.len(), 2, "two-strand link");
        assert_eq!(comps[0].len() + comps[1].len(), 4);
    }

    #[test]
    fn trefoil_shadow_single_component() {
        let g = triple_doubled();
        let over: BTreeMap<usize, u8> = [(0, 0), (1, 0), (2, 0)].into();
        let d = KnotDiagram::new(g, over).unwrap();
        assert_eq!(d.components().len(), 1, "a knot has one strand");
        assert_eq!(d.components()[0].len(), 6);
    }
}
