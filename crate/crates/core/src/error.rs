use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("edge {edge} out of range (graph has {count} edges)")]
    EdgeOutOfRange { edge: usize, count: usize },

    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(usize),

    #[error("edge ids must be dense 0..{count}, missing id {missing}")]
    SparseEdgeIds { missing: usize, count: usize },

    #[error("host map has no vertices")]
    EmptyHost,

    #[error("host map is disconnected (vertex {0} unreachable from vertex 0)")]
    DisconnectedHost(usize),

    #[error("dart {dart} placed more than once")]
    DartRepeated { dart: String },

    #[error("dart {dart} is missing from every rotation")]
    DartMissing { dart: String },

    #[error("dart {dart} placed at vertex {found}, but its edge ends at vertex {expected}")]
    DartMisplaced { dart: String, expected: usize, found: usize },

    #[error("inconsistent Euler characteristic: v={v}, e={e}, f={f}")]
    BadEulerCharacteristic { v: usize, e: usize, f: usize },

    #[error("rotation position {position} out of range at vertex {vertex} (rotation length {len})")]
    BadPosition { vertex: usize, position: usize, len: usize },

    #[error("surface-mode operation needs rotation positions")]
    MissingInsertion,

    #[error("vertex {0} is not marked")]
    UnmarkedVertex(usize),

    #[error("edge {0} is not marked")]
    UnmarkedEdge(usize),

    #[error("marked edge {edge} has unmarked endpoint {vertex}")]
    UnmarkedEndpoint { edge: usize, vertex: usize },

    #[error("subgraph is not connected")]
    NotConnected,

    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),

    #[error("endpoints must be distinct, got {0} twice")]
    SameEndpoints(usize),

    #[error("vertices {0} and {1} already lie in the same island")]
    SameIsland(usize, usize),

    #[error("mode mismatch: {0}")]
    ModeMismatch(&'static str),

    #[error("{marked} marked vertices exceeds the enumeration limit of {limit}")]
    SizeLimit { marked: usize, limit: usize },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("unknown color {0:?}")]
    UnknownColor(String),

    #[error("degree {degree} too large for shifted basis of size {n}")]
    DegreeTooLarge { degree: usize, n: usize },

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unknown {what} {name:?}")]
    Unknown { what: &'static str, name: String },

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("line {line}: {source}")]
    At { line: usize, source: Box<Error> },
}

/// Location-tagged error from one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
