use thiserror::Error;

/// Errors reported by parsing, graph surgery, packing and layout.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed code: {0}")]
    MalformedCode(String),
    #[error("code admits no planar realization")]
    NonRealizable,
    #[error("diagram has a loop or cut vertex: {0}")]
    LoopOrCutVertex(String),
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("embedding invalid: {0}")]
    EmbeddingInvalid(String),
    #[error("face 2-coloring does not exist (embedding corrupt)")]
    NotBipartiteFaces,
    #[error("graph is not a medial-graph candidate: {0}")]
    NotMedialCandidate(String),
    #[error("invalid surgery site: {0}")]
    InvalidSite(String),
    #[error("degenerate locus (placement circle is a line)")]
    DegenerateLocus,
    #[error("Möbius pole lies on the mapped object")]
    PoleOnObject,
    #[error("degenerate point triple for Möbius construction")]
    DegenerateTriple,
    #[error("no circular arc satisfies the constraints: {0}")]
    NoSuchArc(String),
    #[error("cannot augment: {0}")]
    CannotAugment(String),
    #[error("packing did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("packing invariant violated: {0}")]
    InvariantViolation(String),
    #[error("could not align subdrawings for composition")]
    AlignmentFailed,
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("smooth conversion failed on edge {edge}: {reason}")]
    ConversionFailed { edge: usize, reason: String },
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("no free region for lens extension (lambda search exhausted)")]
    NoFreeRegion,
    #[error("graph is not one of the two base-case multigraphs")]
    NotABaseCase,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
