use super::{KnotDiagram, PlaneMultigraph};
use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Serialize, Deserialize)]
struct DartDoc {
    id: usize,
    vertex: usize,
    twin: usize,
    rot_next: usize,
}

/// On-disk multigraph document. `rot_next` encodes counter-clockwise
/// rotation; `crossings` (optional) maps a vertex to the over-strand pair
/// index: 0 selects the pair containing the vertex's smallest dart id.
#[derive(Debug, Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<usize>,
    darts: Vec<DartDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crossings: Option<BTreeMap<String, u8>>,
}

pub fn save_graph(g: &PlaneMultigraph, crossings: Option<&BTreeMap<usize, u8>>) -> Vec<u8> {
    let doc = GraphDoc {
        vertices: (0..g.n_vertices()).collect(),
        darts: (0..g.n_darts())
            .map(|d| DartDoc {
                id: d,
                vertex: g.vertex(d),
                twin: g.twin(d),
                rot_next: g.rot_next(d),
            })
            .collect(),
        crossings: crossings.map(|m| m.iter().map(|(k, v)| (k.to_string(), *v)).collect()),
    };
    serde_json::to_vec_pretty(&doc).expect("graph document serializes")
}

pub fn load_graph(bytes: &[u8]) -> Result<(PlaneMultigraph, Option<BTreeMap<usize, u8>>)> {
    let doc: GraphDoc =
        serde_json::from_slice(bytes).map_err(|e| Error::SchemaError(e.to_string()))?;
    let n = doc.darts.len();
    let mut seen = vec![false; n];
    let mut dart_vertex = vec![0usize; n];
    let mut twin = vec![0usize; n];
    let mut rot_next = vec![0usize; n];
    for d in &doc.darts {
        if d.id >= n || seen[d.id] {
            return Err(Error::SchemaError(format!("bad or duplicate dart id {}", d.id)));
        }
        seen[d.id] = true;
        if d.twin >= n || d.rot_next >= n {
            return Err(Error::SchemaError(format!("dart {} references out of range", d.id)));
        }
        dart_vertex[d.id] = d.vertex;
        twin[d.id] = d.twin;
        rot_next[d.id] = d.rot_next;
    }
    let nv = doc.vertices.len();
    let mut vseen = vec![false; nv];
    for &v in &doc.vertices {
        if v >= nv || vseen[v] {
            return Err(Error::SchemaError(format!("vertex ids must be dense, got {v}")));
        }
        vseen[v] = true;
    }
    if dart_vertex.iter().any(|&v| v >= nv) {
        return Err(Error::SchemaError("dart references missing vertex".into()));
    }
    let g = PlaneMultigraph::from_permutations(dart_vertex, twin, rot_next)?;
    let crossings = match doc.crossings {
        None => None,
        Some(m) => {
            let mut out = BTreeMap::new();
            for (k, v) in m {
                let vertex: usize = k
                    .parse()
                    .map_err(|_| Error::SchemaError(format!("bad crossing key {k}")))?;
                if vertex >= nv || v > 1 {
                    return Err(Error::SchemaError(format!("bad crossing entry {k}:{v}")));
                }
                out.insert(vertex, v);
            }
            Some(out)
        }
    };
    Ok((g, crossings))
}

pub fn save_diagram(d: &KnotDiagram) -> Vec<u8> {
    save_graph(&d.graph, Some(&d.over))
}

pub fn load_diagram(bytes: &[u8]) -> Result<KnotDiagram> {
    let (graph, crossings) = load_graph(bytes)?;
    let over =
        crossings.ok_or_else(|| Error::SchemaError("document has no crossings".into()))?;
    KnotDiagram::new(graph, over)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::*;

    #[test]
    fn round_trip_identity() {
        let g = square_pyramid();
        let bytes = save_graph(&g, None);
        let (h, cr) = load_graph(&bytes).unwrap();
        assert!(cr.is_none());
        assert_eq!(g, h, "save/load must preserve the tables bit-exactly");
        assert_eq!(bytes, save_graph(&h, None));
    }

    #[test]
    fn duplicate_dart_id_rejected() {
        let g = theta4();
        let mut doc: serde_json::Value = serde_json::from_slice(&save_graph(&g, None)).unwrap();
        doc["darts"][1]["id"] = doc["darts"][0]["id"].clone();
        let bytes = serde_json::to_vec(&doc).unwrap();
        assert!(matches!(load_graph(&bytes), Err(Error::SchemaError(_))));
    }

    #[test]
    fn face_counts_from_documents() {
        let (g, _) = load_graph(&save_graph(&theta4(), None)).unwrap();
        assert_eq!(g.faces().len(), 4);
    }
}
