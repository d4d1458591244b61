use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graphs need at least one vertex")]
    EmptyGraph,

    #[error("graphs are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("graph spec parse error at byte {pos}: {msg}")]
    SpecParse { pos: usize, msg: String },

    #[error("state parse error: {0}")]
    StateParse(String),

    #[error("state has {state} vertices but the graph has {graph}")]
    OrderMismatch { state: usize, graph: usize },

    #[error("{0}")]
    OutOfRange(String),

    #[error("operation needs a refraction-only graph, but {0} reflection edges are present")]
    NotRefractionOnly(usize),

    #[error("winding counter {counter} = {value} is not divisible by n = {n} at orbit closure")]
    WindingNotDivisible { counter: String, value: i64, n: usize },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("unknown conjecture `{0}`")]
    UnknownConjecture(String),
}

impl Error {
    /// True for errors caused by inputs outside what the engine supports,
    /// as opposed to malformed input.
    pub fn is_range_error(&self) -> bool {
        matches!(
            self,
            Error::TooManyVertices { .. } | Error::OutOfRange(_) | Error::OrderMismatch { .. }
        )
    }
}
