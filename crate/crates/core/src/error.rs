use thiserror::Error;

use crate::graph::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    NoVertices,

    #[error("edge {index} is a loop at vertex {vertex}")]
    LoopEdge { index: usize, vertex: usize },

    #[error("edge {index} has endpoint {vertex} outside 0..{n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },

    #[error("vertex set {set} is not contained in 0..{n}")]
    SetOutOfRange { set: VertexSet, n: usize },

    #[error("sets {a} and {b} must be disjoint")]
    OverlappingSets { a: VertexSet, b: VertexSet },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("source and sink coincide at vertex {0}")]
    SameEndpoints(usize),

    #[error("{what} needs n <= {limit}, got n = {n}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("invalid set function: {0}")]
    InvalidSetFunc(String),

    #[error("derived set function is negative at vertex {vertex} (value {value})")]
    NegativeValue { vertex: usize, value: i64 },

    #[error("({k},{ell}) is outside the pebble range 0 <= ell < 2k")]
    OutsidePebbleRange { k: i64, ell: i64 },

    #[error("set function is not pebble-compatible and n = {n} exceeds the exhaustive limit {limit}")]
    Unsupported { n: usize, limit: usize },

    #[error("set function does not induce a matroid on edge sets: {0}")]
    NotMatroidal(String),

    #[error("graph is not sparse: vertex set {violation} spans too many edges")]
    NotSparse { violation: VertexSet },

    #[error("adjacent vertices of edge {edge} violate l(u)+l(v) = l(uv)+1")]
    AdjacencyClause { edge: usize },

    #[error("rank deficit: rank {rank} < required {required}")]
    RankDeficit { rank: usize, required: i64 },

    #[error("in-degree targets sum to {sum}, but the graph has {m} edges")]
    TargetSum { sum: i64, m: usize },

    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: usize, degree: usize },

    #[error("component containing vertex {vertex} has odd order")]
    OddComponent { vertex: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis of {theorem} fails: {detail}")]
    Hypothesis { theorem: String, detail: String },

    #[error("search budget of {budget} attempts exhausted: {detail}")]
    BudgetExhausted { budget: usize, detail: String },

    #[error("internal verification failure: {0}")]
    Internal(String),
}
