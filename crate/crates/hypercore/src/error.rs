use thiserror::Error;

/// Errors produced when building, parsing, or generating hypergraphs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {edge:?} repeats a vertex")]
    RepeatedVertex { edge: [usize; 3] },

    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: [usize; 3] },

    #[error("partition has {got} labels for {n} vertices")]
    PartitionLength { got: usize, n: usize },

    #[error("edge {edge:?} is not transversal to the 3-class partition")]
    NonTransversalEdge { edge: [usize; 3] },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("pair ({a}, {b}) out of range for group of order {order}")]
    PairOutOfRange { a: usize, b: usize, order: usize },

    #[error("requested {requested} edges but only {available} exist")]
    TooManyEdges { requested: usize, available: usize },

    #[error("generator gave up at {reached} of {target} edges")]
    GeneratorGaveUp {
        reached: usize,
        target: usize,
        /// The certified configuration-free graph built so far.
        partial: Box<crate::hypergraph::Hypergraph3>,
    },

    #[error("operation requires a linear hypergraph (pair {pair:?} has degree {degree})")]
    NotLinear { pair: (usize, usize), degree: usize },

    #[error("operation requires a 3-class transversal partition")]
    NotTripartite,

    #[error("p = {0} must be a prime >= 5")]
    BadModulus(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
