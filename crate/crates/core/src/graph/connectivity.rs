use super::{PlaneMultigraph, Vertex};

impl PlaneMultigraph {
    pub fn is_connected(&self) -> bool {
        if self.n_vertices() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n_vertices()];
        let mut stack = vec![self.vertex(0)];
        seen[self.vertex(0)] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for d in self.darts_of(v) {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n_vertices()
    }

    /// Connected components of the graph with `removed` vertices deleted.
    pub fn components_without(&self, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let n = self.n_vertices();
        let mut gone = vec![false; n];
        for &r in removed {
            gone[r] = true;
        }
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for s in 0..n {
            if gone[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut verts = vec![s];
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for d in self.darts_of(v) {
                    let w = self.head(d);
                    if !gone[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        verts.push(w);
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            out.push(verts);
        }
        out
    }

    /// Articulation vertices (multi-edge aware: only the traversed dart is
    /// excluded when recursing, so parallel edges keep their ends 2-connected).
    pub fn cut_vertices(&self) -> Vec<Vertex> {
        let n = self.n_vertices();
        if n == 0 {
            return vec![];
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cuts = vec![false; n];
        let mut timer = 0usize;
        // Iterative DFS over darts.
        struct Frame {
            v: Vertex,
            parent_dart: Option<usize>,
            darts: Vec<usize>,
            idx: usize,
            child_count: usize,
        }
        let root = 0;
        let mut stack = vec![Frame {
            v: root,
            parent_dart: None,
            darts: self.darts_of(root),
            idx: 0,
            child_count: 0,
        }];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(top) = stack.last_mut() {
            if top.idx < top.darts.len() {
                let d = top.darts[top.idx];
                top.idx += 1;
                if Some(self.twin(d)) == top.parent_dart {
                    continue;
                }
                let w = self.head(d);
                if disc[w] == usize::MAX {
                    top.child_count += 1;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    let frame = Frame {
                        v: w,
                        parent_dart: Some(d),
                        darts: self.darts_of(w),
                        idx: 0,
                        child_count: 0,
                    };
                    stack.push(frame);
                } else {
                    let v = top.v;
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let done = stack.pop().unwrap();
                if let Some(pd) = done.parent_dart {
                    let p = self.vertex(pd);
                    low[p] = low[p].min(low[done.v]);
                    if p != root && low[done.v] >= disc[p] {
                        cuts[p] = true;
                    }
                    if p == root && stack[0].child_count > 1 {
                        cuts[root] = true;
                    }
                }
            }
        }
        (0..n).filter(|&v| cuts[v]).collect()
    }

    pub fn is_biconnected(&self) -> bool {
        self.n_vertices() >= 2
            && self.is_connected()
            && !self.has_loop()
            && self.cut_vertices().is_empty()
    }

    /// All vertex pairs whose removal disconnects the rest.
    pub fn separation_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n_vertices();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if n <= 3 {
                    continue;
                }
                if self.components_without(&[u, v]).len() > 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The paper's minimal separation pair: take a smallest induced
    /// component A over all pairs; `u,v` is minimal when A contains no
    /// separation pair and no pair between an A-vertex and u or v.
    /// Candidates are scanned by increasing |A|, ties by lowest ids.
    pub fn minimal_separation_pair(&self) -> Option<(Vertex, Vertex, Vec<Vertex>)> {
        let pairs = self.separation_pairs();
        if pairs.is_empty() {
            return None;
        }
        let is_pair = |u: Vertex, v: Vertex| {
            let (a, b) = (u.min(v), u.max(v));
            pairs.binary_search(&(a, b)).is_ok()
        };
        let mut cands: Vec<(usize, Vertex, Vertex, Vec<Vertex>)> = pairs
            .iter()
            .map(|&(u, v)| {
                let comps = self.components_without(&[u, v]);
                let smallest = comps.into_iter().min_by_key(|c| (c.len(), c.clone())).unwrap();
                (smallest.len(), u, v, smallest)
            })
            .collect();
        cands.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        for (_, u, v, comp) in cands {
            let internal = comp
                .iter()
                .enumerate()
                .any(|(i, &x)| comp[i + 1..].iter().any(|&y| is_pair(x, y)));
            let boundary = comp.iter().any(|&x| is_pair(x, u) || is_pair(x, v));
            if !internal && !boundary {
                return Some((u, v, comp));
            }
        }
        None
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for d in self.edges() {
            let u = self.vertex(d);
            let v = self.head(d);
            if !seen.insert((u.min(v), u.max(v))) {
                return false;
            }
        }
        true
    }

    /// Simple, 3-connected (and planar by representation).
    pub fn is_polyhedral(&self) -> bool {
        self.n_vertices() >= 4
            && self.is_simple()
            && self.is_biconnected()
            && self.separation_pairs().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::super::builders::*;

    #[test]
    fn octahedron_is_three_connected() {
        let g = octahedron();
        assert!(g.is_biconnected());
        assert!(g.separation_pairs().is_empty());
        assert!(g.is_polyhedral());
    }

    #[test]
    fn theta4_biconnected_not_simple() {
        let g = theta4();
        assert!(g.is_biconnected());
        assert!(!g.is_simple());
        assert!(!g.is_polyhedral());
    }

    #[test]
    fn square_pyramid_polyhedral() {
        assert!(square_pyramid().is_polyhedral());
    }
}
