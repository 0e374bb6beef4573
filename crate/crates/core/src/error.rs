use thiserror::Error;

use crate::hypergraph::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {0} has fewer than two vertices")]
    LoopEdge(VertexSet),
    #[error("edge {inner} is contained in edge {outer}")]
    ContainedEdge { inner: VertexSet, outer: VertexSet },
    #[error("vertex {vertex} is out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{0} is not an edge of the hypergraph")]
    NoSuchEdge(VertexSet),
    #[error("hypergraph is not uniform")]
    NotUniform,
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("operation needs at least two edges")]
    TooFewEdges,
    #[error("hypergraph is not a simple graph")]
    NotAGraph,
    #[error("hypergraph is not properly-connected: edges {0} and {1} violate the distance identity")]
    NotProperlyConnected(VertexSet, VertexSet),
    #[error("hypergraph is not triangulated")]
    NotTriangulated,
    #[error("edge {0} is not a splitting edge")]
    NotASplittingEdge(VertexSet),
    #[error("ideal has {count} generators, above the cap of {cap}")]
    TooManyGenerators { count: usize, cap: usize },
    #[error("instance too large: {what} is {size}, cap is {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("generator cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    Located {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("verification failed: {0}")]
    Verification(String),
}
