//! The crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong when building graphs, pairings or reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A malformed line in a graph file (1-based line number).
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    /// A structural problem with an embedded graph.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// An edge joins two vertices of the same bipartite colour.
    #[error("edge {0}-{1} joins two vertices of the same colour")]
    NotBipartite(u64, u64),

    /// Two edges of the straight-line drawing cross or overlap.
    #[error("edges {0} and {1} cross in the drawing")]
    CrossingEdges(String, String),

    /// A listed node is not on the outer face, or the node order is not
    /// counterclockwise.
    #[error("node {0} is not on the outer face in counterclockwise order")]
    NodeNotOnOuterFace(u64),

    /// The nodes do not contain equally many black and white vertices.
    #[error("unbalanced node colours: {black} black, {white} white")]
    UnbalancedNodes { black: usize, white: usize },

    /// A vertex or node label that does not exist.
    #[error("unknown {kind} {id}")]
    Unknown { kind: &'static str, id: u64 },

    /// A pairing that is not a perfect pairing of the expected labels.
    #[error("malformed pairing: {0}")]
    MalformedPairing(String),

    #[error("pairing is not odd-even")]
    NotOddEven,

    #[error("pairing is not black-white for this colouring")]
    NotBlackWhite,

    /// A malformed node colouring.
    #[error("invalid colouring: {0}")]
    InvalidColoring(String),

    /// A node set with unequal black and white counts.
    #[error("node set is not balanced")]
    UnbalancedSet,

    /// The RGB split violates the triangle inequality.
    #[error("split ({0},{1},{2}) has no tripartite pairing")]
    NoTripartitePairing(usize, usize, usize),

    /// A split whose parts do not add up to the number of nodes.
    #[error("split ({r},{g},{b}) does not cover {nodes} nodes")]
    SplitMismatch { r: usize, g: usize, b: usize, nodes: usize },

    /// Ratios such as Y or normalised probabilities need Z^D(G) ≠ 0.
    #[error("the dimer partition function vanishes")]
    ZeroDimerPartition,

    /// A Kasteleyn weighting needs an even number of vertices.
    #[error("odd vertex count {0}")]
    OddVertexCount(usize),

    /// Brute-force enumeration exceeded its state budget.
    #[error("enumeration exceeded the cap of {0} partial states")]
    CapExceeded(u64),

    /// Operation-specific precondition failures.
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
