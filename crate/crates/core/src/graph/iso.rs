use super::{Dart, PlaneMultigraph};

/// Canonical relabeling signature starting from `start`, exploring with
/// either the counter-clockwise rotation or its reverse (`reflect`).
/// Optional per-dart flags (e.g. over-strand markers) are appended so that
/// flag-aware comparisons distinguish diagrams with different crossing data.
fn signature_from(
    g: &PlaneMultigraph,
    start: Dart,
    reflect: bool,
    flags: Option<&[bool]>,
) -> Vec<u32> {
    let n = g.n_darts();
    let rot = |d: Dart| if reflect { g.rot_prev(d) } else { g.rot_next(d) };
    let mut new_id = vec![u32::MAX; n];
    let mut order: Vec<Dart> = Vec::with_capacity(n);
    new_id[start] = 0;
    order.push(start);
    let mut sig = Vec::with_capacity(2 * n + n / 4);
    let mut k = 0;
    while k < order.len() {
        let d = order[k];
        for nb in [g.twin(d), rot(d)] {
            if new_id[nb] == u32::MAX {
                new_id[nb] = order.len() as u32;
                order.push(nb);
            }
        }
        sig.push(new_id[g.twin(d)]);
        sig.push(new_id[rot(d)]);
        k += 1;
    }
    if let Some(f) = flags {
        for &d in &order {
            sig.push(f[d] as u32);
        }
    }
    sig
}

/// Minimum signature over all start darts (and reflections if allowed).
pub fn canonical_form(
    g: &PlaneMultigraph,
    allow_reflection: bool,
    flags: Option<&[bool]>,
) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for start in 0..g.n_darts() {
        for reflect in [false, true] {
            if reflect && !allow_reflection {
                continue;
            }
            let sig = signature_from(g, start, reflect, flags);
            if best.as_ref().map_or(true, |b| sig < *b) {
                best = Some(sig);
            }
        }
    }
    best.unwrap_or_default()
}

/// Same embedded multigraph up to orientation-preserving relabeling.
pub fn embedding_isomorphic(a: &PlaneMultigraph, b: &PlaneMultigraph) -> bool {
    a.n_darts() == b.n_darts()
        && a.n_vertices() == b.n_vertices()
        && canonical_form(a, false, None) == canonical_form(b, false, None)
}

/// Isomorphic as embedded multigraphs, allowing a reflection.
pub fn isomorphic_any_orientation(a: &PlaneMultigraph, b: &PlaneMultigraph) -> bool {
    a.n_darts() == b.n_darts()
        && a.n_vertices() == b.n_vertices()
        && canonical_form(a, true, None) == canonical_form(b, true, None)
}

/// Relabeling map a→b if one exists (orientation preserving): returns the
/// dart bijection `map[dart of a] = dart of b`, matching on equal
/// canonical traversals.
pub fn embedding_iso_map(a: &PlaneMultigraph, b: &PlaneMultigraph) -> Option<Vec<Dart>> {
    if a.n_darts() != b.n_darts() {
        return None;
    }
    // Fix a's canonical start, then find b's matching start.
    let mut best_a: Option<(Vec<u32>, Dart)> = None;
    for s in 0..a.n_darts() {
        let sig = signature_from(a, s, false, None);
        if best_a.as_ref().map_or(true, |(b, _)| sig < *b) {
            best_a = Some((sig, s));
        }
    }
    let (sig_a, start_a) = best_a?;
    for s in 0..b.n_darts() {
        if signature_from(b, s, false, None) == sig_a {
            // Rebuild both orders and zip them.
            let order = |g: &PlaneMultigraph, start: Dart| {
                let n = g.n_darts();
                let mut new_id = vec![u32::MAX; n];
                let mut ord = vec![start];
                new_id[start] = 0;
                let mut k = 0;
                while k < ord.len() {
                    let d = ord[k];
                    for nb in [g.twin(d), g.rot_next(d)] {
                        if new_id[nb] == u32::MAX {
                            new_id[nb] = ord.len() as u32;
                            ord.push(nb);
                        }
                    }
                    k += 1;
                }
                ord
            };
            let oa = order(a, start_a);
            let ob = order(b, s);
            let mut map = vec![0usize; a.n_darts()];
            for (x, y) in oa.into_iter().zip(ob) {
                map[x] = y;
            }
            return Some(map);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::*;

    #[test]
    fn relabelled_octahedron_isomorphic() {
        let g = octahedron();
        // Relabel by rotating dart ids: rebuild from a different star order.
        let h = from_stars(&[
            &[8, 11, 10, 9],
            &[0, 1, 2, 3],
            &[8, 4, 0, 7],
            &[9, 5, 1, 4],
            &[2, 5, 10, 6],
            &[7, 3, 6, 11],
        ]);
        assert!(embedding_isomorphic(&g, &h));
        assert!(embedding_iso_map(&g, &h).is_some());
    }

    #[test]
    fn theta_not_isomorphic_to_triple() {
        assert!(!isomorphic_any_orientation(&theta4(), &triple_doubled()));
    }

    #[test]
    fn mirror_detected_only_with_reflection() {
        // A mirrored K4 embedding: reverse every star.
        let g = k4();
        let h = from_stars(&[&[2, 1, 0], &[4, 3, 0], &[5, 2, 3], &[5, 4, 1]]);
        assert!(isomorphic_any_orientation(&g, &h));
        // K4 embeddings happen to be self-mirror (its unique embedding),
        // so orientation-preserving equivalence holds too.
        assert!(embedding_isomorphic(&g, &h));
    }
}
