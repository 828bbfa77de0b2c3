//! Knot-diagram notations: Gauss codes, Dowker–Thistlethwaite codes, and
//! the named corpus of small prime knots.
//!
//! Parsing reconstructs a planar embedding from the double-occurrence
//! structure: at every crossing the two strand passes must interleave in
//! the rotation, which leaves one binary choice per crossing; the parser
//! scans these assignments for one that satisfies the Euler formula and
//! rejects the code as non-realizable when none does.

use crate::error::Error;
use crate::graph::{KnotDiagram, PlaneMultigraph};
use crate::Result;
use std::collections::BTreeMap;

const MAX_SEARCH_CROSSINGS: usize = 22;

/// One strand pass: which vertex, and whether this pass goes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Visit {
    vertex: usize,
    over: bool,
}

/// Build a diagram from closed visit walks (one per link component).
fn diagram_from_walks(walks: &[Vec<Visit>]) -> Result<KnotDiagram> {
    let total: usize = walks.iter().map(|w| w.len()).sum();
    if total == 0 || total % 2 != 0 {
        return Err(Error::MalformedCode("empty or odd-length code".into()));
    }
    let n = total / 2;
    if n > MAX_SEARCH_CROSSINGS {
        return Err(Error::MalformedCode(format!(
            "realizability search supports at most {MAX_SEARCH_CROSSINGS} crossings"
        )));
    }
    let mut visit_count = vec![0usize; n];
    let mut over_count = vec![0usize; n];
    for w in walks {
        for v in w {
            if v.vertex >= n {
                return Err(Error::MalformedCode("label indices not dense".into()));
            }
            visit_count[v.vertex] += 1;
            over_count[v.vertex] += v.over as usize;
        }
    }
    if visit_count.iter().any(|&c| c != 2) {
        return Err(Error::MalformedCode(
            "every label must occur exactly twice".into(),
        ));
    }
    if over_count.iter().any(|&c| c != 1) {
        return Err(Error::MalformedCode(
            "the two passes of a crossing must have opposite signs".into(),
        ));
    }
    // Loops: consecutive identical vertices along a walk.
    for w in walks {
        for i in 0..w.len() {
            if w[i].vertex == w[(i + 1) % w.len()].vertex {
                return Err(Error::LoopOrCutVertex(format!(
                    "label {} adjacent to itself forces a loop",
                    w[i].vertex
                )));
            }
        }
    }
    // Global edge ids: edges[k] joins walk step k to the next step of the
    // same component. Darts 2k (out of step k's vertex) and 2k+1 (into the
    // successor's vertex).
    let mut step_vertex = Vec::with_capacity(total);
    let mut next_step = Vec::with_capacity(total);
    let mut base = 0usize;
    for w in walks {
        for i in 0..w.len() {
            step_vertex.push(w[i].vertex);
            next_step.push(base + (i + 1) % w.len());
        }
        base += w.len();
    }
    let nd = 2 * total;
    let mut dart_vertex = vec![0usize; nd];
    let mut twin = vec![0usize; nd];
    for k in 0..total {
        dart_vertex[2 * k] = step_vertex[k];
        dart_vertex[2 * k + 1] = step_vertex[next_step[k]];
        twin[2 * k] = 2 * k + 1;
        twin[2 * k + 1] = 2 * k;
    }
    // Per vertex: the two passes, each with (in_dart, out_dart).
    let mut passes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut pass_over: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut prev_step = vec![0usize; total];
    for k in 0..total {
        prev_step[next_step[k]] = k;
    }
    base = 0;
    for w in walks {
        for i in 0..w.len() {
            let k = base + i;
            let in_dart = 2 * prev_step[k] + 1;
            let out_dart = 2 * k;
            passes[w[i].vertex].push((in_dart, out_dart));
            pass_over[w[i].vertex].push(w[i].over);
        }
        base += w.len();
    }
    // Enumerate the per-vertex interleavings: rotation is either
    // (in1, in2, out1, out2) or (in1, out2, out1, in2) — both keep the two
    // passes opposite; the bit decides which side the second strand enters.
    let target_faces = (total as i64) - (n as i64) + 2;
    let mut rot = vec![0usize; nd];
    let mut found = false;
    'outer: for mask in 0u64..(1u64 << n) {
        for v in 0..n {
            let (in1, out1) = passes[v][0];
            let (in2, out2) = passes[v][1];
            let star: [usize; 4] = if mask >> v & 1 == 0 {
                [in1, in2, out1, out2]
            } else {
                [in1, out2, out1, in2]
            };
            for i in 0..4 {
                rot[star[i]] = star[(i + 1) % 4];
            }
        }
        // Count faces of this rotation candidate.
        let mut seen = vec![false; nd];
        let mut faces = 0i64;
        for d in 0..nd {
            if seen[d] {
                continue;
            }
            faces += 1;
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                x = rot[twin[x]];
            }
        }
        if faces == target_faces {
            found = true;
            break 'outer;
        }
    }
    if !found {
        return Err(Error::NonRealizable);
    }
    let graph = PlaneMultigraph::from_permutations(dart_vertex, twin, rot)
        .map_err(|_| Error::NonRealizable)?;
    if !graph.is_biconnected() {
        return Err(Error::LoopOrCutVertex("diagram has a cut vertex".into()));
    }
    // Over flags: the over pass's dart pair.
    let mut over = BTreeMap::new();
    for v in 0..n {
        let over_pass = if pass_over[v][0] { 0 } else { 1 };
        let (in_d, out_d) = passes[v][over_pass];
        let star = graph.star(*graph.darts_of(v).iter().min().unwrap());
        let pair0 = [star[0], star[2]];
        let index = if pair0.contains(&in_d) && pair0.contains(&out_d) {
            0u8
        } else {
            1u8
        };
        over.insert(v, index);
    }
    KnotDiagram::new(graph, over)
}

/// Parse a Gauss code like `A,-B,C,-D,B,-A,D,-C`; link components are
/// separated by `;`. A minus sign marks the under pass.
pub fn parse_gauss(code: &str) -> Result<KnotDiagram> {
    let mut labels: BTreeMap<String, usize> = BTreeMap::new();
    let mut walks = Vec::new();
    for comp in code.split(';') {
        let mut walk = Vec::new();
        for raw in comp.split(',') {
            let tok = raw.trim();
            if tok.is_empty() {
                return Err(Error::MalformedCode("empty token".into()));
            }
            let (over, name) = match tok.strip_prefix('-') {
                Some(rest) => (false, rest.trim()),
                None => (true, tok.strip_prefix('+').unwrap_or(tok).trim()),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::MalformedCode(format!("bad label {tok:?}")));
            }
            let next_id = labels.len();
            let id = *labels.entry(name.to_string()).or_insert(next_id);
            walk.push(Visit { vertex: id, over });
        }
        if walk.is_empty() {
            return Err(Error::MalformedCode("empty component".into()));
        }
        walks.push(walk);
    }
    diagram_from_walks(&walks)
}

/// Parse a Dowker–Thistlethwaite code like `-6,-8,-2,-4` (knots only).
/// A negative even label means the strand passes under at that position.
pub fn parse_dt(code: &str) -> Result<KnotDiagram> {
    let evens: Vec<i64> = code
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::MalformedCode(format!("bad integer: {e}")))?;
    let n = evens.len();
    if n == 0 {
        return Err(Error::MalformedCode("empty code".into()));
    }
    let mut seen = vec![false; n];
    for &e in &evens {
        let a = e.unsigned_abs() as usize;
        if e % 2 != 0 {
            return Err(Error::MalformedCode(format!("odd entry {e}")));
        }
        if a < 2 || a > 2 * n || a % 2 != 0 || seen[a / 2 - 1] {
            return Err(Error::MalformedCode(format!(
                "entries must be a signed permutation of 2..{}",
                2 * n
            )));
        }
        seen[a / 2 - 1] = true;
    }
    // Vertex i carries labels {2i+1, |evens[i]|} (0-based i).
    let mut vertex_at_time = vec![usize::MAX; 2 * n + 1];
    for i in 0..n {
        vertex_at_time[2 * i + 1] = i;
        vertex_at_time[evens[i].unsigned_abs() as usize] = i;
    }
    let mut walk = Vec::with_capacity(2 * n);
    for t in 1..=2 * n {
        let v = vertex_at_time[t];
        // Over at the odd time iff the even label is negative.
        let odd_over = evens[v] < 0;
        let over = if t % 2 == 1 { odd_over } else { !odd_over };
        walk.push(Visit { vertex: v, over });
    }
    diagram_from_walks(&[walk])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    Gauss,
    Dt,
}

/// Serialize a diagram back into a code. Gauss codes support links;
/// DT codes require a single component.
pub fn emit_code(d: &KnotDiagram, kind: CodeKind) -> Result<String> {
    let comps = d.components();
    match kind {
        CodeKind::Gauss => {
            let mut names: BTreeMap<usize, String> = BTreeMap::new();
            let mut out_comps = Vec::new();
            for walk in &comps {
                let mut toks = Vec::new();
                for &dart in walk {
                    let v = d.graph.head(dart);
                    let next_id = names.len();
                    let name = names.entry(v).or_insert_with(|| label_name(next_id)).clone();
                    let over = pass_is_over(d, dart);
                    toks.push(if over { name } else { format!("-{name}") });
                }
                out_comps.push(toks.join(","));
            }
            Ok(out_comps.join(";"))
        }
        CodeKind::Dt => {
            if comps.len() != 1 {
                return Err(Error::MalformedCode(
                    "DT codes require a single-component diagram".into(),
                ));
            }
            let walk = &comps[0];
            let n = walk.len() / 2;
            let mut labels: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
            for (idx, &dart) in walk.iter().enumerate() {
                let v = d.graph.head(dart);
                let t = idx + 1;
                labels.entry(v).or_default().push((t, pass_is_over(d, dart)));
            }
            let mut evens = vec![0i64; n];
            for (_, lab) in labels {
                let (t1, o1) = lab[0];
                let (t2, o2) = lab[1];
                let (odd, even, even_over) = if t1 % 2 == 1 { (t1, t2, o2) } else { (t2, t1, o1) };
                if odd % 2 != 1 || even % 2 != 0 {
                    return Err(Error::MalformedCode(
                        "diagram does not admit a DT labeling".into(),
                    ));
                }
                // Spec sign convention: negative = under at the even label.
                evens[(odd - 1) / 2] = if even_over { even as i64 } else { -(even as i64) };
            }
            Ok(evens
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(","))
        }
    }
}

fn label_name(i: usize) -> String {
    let letters = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    if i < 26 {
        (letters[i] as char).to_string()
    } else {
        format!("V{i}")
    }
}

/// Whether the pass arriving along `dart` goes over its crossing.
fn pass_is_over(d: &KnotDiagram, dart: usize) -> bool {
    let v = d.graph.head(dart);
    let in_dart = d.graph.twin(dart);
    let (a, b) = d.over_pair(v);
    in_dart == a || in_dart == b
}

/// Named Dowker–Thistlethwaite codes for the prime knots with at most
/// eight crossings (Rolfsen numbering). Unsigned entries denote the
/// alternating diagram; 8_19–8_21 are non-alternating.
pub const KNOT_TABLE: &[(&str, &str)] = &[
    ("3_1", "4,6,2"),
    ("4_1", "4,6,8,2"),
    ("5_1", "6,8,10,2,4"),
    ("5_2", "4,8,10,2,6"),
    ("6_1", "4,8,12,10,2,6"),
    ("6_2", "4,8,10,12,2,6"),
    ("6_3", "4,8,10,2,12,6"),
    ("7_1", "8,10,12,14,2,4,6"),
    ("7_2", "4,10,14,12,2,8,6"),
    ("7_3", "6,10,12,14,2,4,8"),
    ("7_4", "6,10,12,14,4,2,8"),
    ("7_5", "4,10,12,14,2,8,6"),
    ("7_6", "4,8,12,2,14,6,10"),
    ("7_7", "4,8,10,12,2,14,6"),
    ("8_1", "10,16,14,12,2,8,6,4"),
    ("8_2", "4,10,12,14,16,2,6,8"),
    ("8_3", "6,12,10,16,14,4,2,8"),
    ("8_4", "6,10,12,16,14,4,2,8"),
    ("8_5", "6,8,12,2,14,16,4,10"),
    ("8_6", "4,10,14,16,12,2,8,6"),
    ("8_7", "4,10,12,14,2,16,6,8"),
    ("8_8", "4,8,12,2,16,14,6,10"),
    ("8_9", "4,10,12,14,2,16,8,6"),
    ("8_10", "4,8,12,2,14,16,6,10"),
    ("8_11", "4,10,12,14,16,2,8,6"),
    ("8_12", "4,8,14,10,2,16,6,12"),
    ("8_13", "4,10,14,12,16,2,6,8"),
    ("8_14", "4,8,10,14,2,16,6,12"),
    ("8_15", "4,8,12,16,2,14,6,10"),
    ("8_16", "4,8,14,2,12,16,6,10"),
    ("8_17", "6,10,12,14,16,4,2,8"),
    ("8_18", "6,8,10,12,14,16,2,4"),
    ("8_19", "4,8,-12,2,-14,-16,-6,-10"),
    ("8_20", "4,8,-12,2,-14,-16,6,-10"),
    ("8_21", "4,8,-12,2,14,-16,6,-10"),
];

/// Parse a corpus knot by name (e.g. `6_2`).
pub fn knot(name: &str) -> Result<KnotDiagram> {
    let code = KNOT_TABLE
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| *c)
        .ok_or_else(|| Error::MalformedCode(format!("unknown knot {name}")))?;
    parse_dt(code)
}

/// Names of the 33 prime knots up to 8 crossings that admit plane
/// Lombardi drawings (all except 4_1 and 5_2).
pub fn lombardi_corpus_names() -> Vec<&'static str> {
    KNOT_TABLE
        .iter()
        .map(|(n, _)| *n)
        .filter(|n| *n != "4_1" && *n != "5_2")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_codes_agree() {
        let from_gauss = parse_gauss("A,-B,C,-D,B,-A,D,-C").unwrap();
        let from_dt = parse_dt("-6,-8,-2,-4").unwrap();
        assert_eq!(from_gauss.graph.n_vertices(), 4);
        assert_eq!(from_dt.graph.n_vertices(), 4);
        assert_eq!(from_gauss.graph.faces().len(), 6, "Euler: 4-8+F=2");
        assert!(
            crate::graph::isomorphic_any_orientation(&from_gauss.graph, &from_dt.graph),
            "both notations describe the same 4-crossing shadow"
        );
        // Its shadow contains K4.
        assert!(from_gauss.graph.find_k4().is_some());
    }

    #[test]
    fn trefoil_gauss() {
        let d = parse_gauss("A,-B,C,-A,B,-C").unwrap();
        assert_eq!(d.graph.n_vertices(), 3);
        assert_eq!(d.graph.faces().len(), 5);
        assert!(crate::graph::isomorphic_any_orientation(
            &d.graph,
            &crate::graph::builders::triple_doubled()
        ));
    }

    #[test]
    fn trefoil_dt() {
        let d = parse_dt("4,6,2").unwrap();
        assert_eq!(d.graph.n_vertices(), 3);
        assert!(crate::graph::isomorphic_any_orientation(
            &d.graph,
            &crate::graph::builders::triple_doubled()
        ));
    }

    #[test]
    fn error_cases() {
        assert!(matches!(parse_gauss("A,-A"), Err(Error::LoopOrCutVertex(_))));
        assert!(matches!(parse_dt("3,5"), Err(Error::MalformedCode(_))));
        assert!(matches!(parse_dt("4,4"), Err(Error::MalformedCode(_))));
        // Gauss's non-realizable word abacbc.
        assert!(matches!(
            parse_gauss("A,-B,-A,C,B,-C"),
            Err(Error::NonRealizable)
        ));
        // Same label twice with equal signs.
        assert!(matches!(parse_gauss("A,B,A,-B"), Err(Error::MalformedCode(_))));
    }

    #[test]
    fn corpus_shadows_distinct() {
        // Alternating entries must have pairwise non-isomorphic shadows;
        // 8_19–8_21 share 8_10's shadow but differ in crossing flags.
        let mut shadows = Vec::new();
        for (name, code) in KNOT_TABLE {
            let d = parse_dt(code).unwrap();
            shadows.push((*name, d));
        }
        for i in 0..shadows.len() {
            for j in i + 1..shadows.len() {
                let (na, a) = &shadows[i];
                let (nb, b) = &shadows[j];
                assert!(!a.isomorphic(b, true), "{na} and {nb} are the same diagram");
                let same_shadow_ok = nb.starts_with("8_1") || nb.starts_with("8_2");
                if !same_shadow_ok {
                    assert!(
                        !crate::graph::isomorphic_any_orientation(&a.graph, &b.graph),
                        "{na} and {nb} share a shadow"
                    );
                }
            }
        }
    }

    #[test]
    fn eight_eighteen_is_medial_of_square_pyramid() {
        let d = knot("8_18").unwrap();
        let m = crate::graph::medial_of_primal(&crate::graph::builders::square_pyramid()).unwrap();
        assert!(crate::graph::isomorphic_any_orientation(&d.graph, &m));
    }

    #[test]
    fn corpus_round_trips() {
        for (name, code) in KNOT_TABLE {
            let d = parse_dt(code).unwrap_or_else(|e| panic!("{name} failed to parse: {e}"));
            let n = code.split(',').count();
            assert_eq!(d.graph.n_vertices(), n, "{name}");
            // Gauss round trip.
            let g_code = emit_code(&d, CodeKind::Gauss).unwrap();
            let d2 = parse_gauss(&g_code).unwrap_or_else(|e| panic!("{name} gauss: {e}"));
            assert!(d.isomorphic(&d2, true), "{name} gauss round trip");
            // DT round trip.
            let dt_code = emit_code(&d, CodeKind::Dt).unwrap();
            let d3 = parse_dt(&dt_code).unwrap_or_else(|e| panic!("{name} dt: {e}"));
            assert!(d.isomorphic(&d3, true), "{name} dt round trip");
        }
    }

    #[test]
    fn gauss_link_round_trip() {
        // A two-component link shadow: two strands crossing four times.
        let code = "A,-B,C,-D;B,-A,D,-C";
        if let Ok(d) = parse_gauss(code) {
            assert_eq!(d.components().len(), 2);
            let emitted = emit_code(&d, CodeKind::Gauss).unwrap();
            let d2 = parse_gauss(&emitted).unwrap();
            assert!(d.isomorphic(&d2, true));
        }
    }
}
