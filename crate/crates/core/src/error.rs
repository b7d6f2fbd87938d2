use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected {found} at byte {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: String,
        expected: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable `{0}` already occurs in the formula")]
    NameClash(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("handle {0} does not address a subformula")]
    StaleHandle(String),
    #[error("expansion exceeded the term budget of {budget} terms")]
    TermBudget { budget: usize },
    #[error("{vars} variables exceed the truth-table budget of {budget}")]
    VariableBudget { vars: usize, budget: usize },
    #[error("vertex `{0}` is not in the graph")]
    UnknownVertex(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph is not triangle-free")]
    NotTriangleFree,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("json: {0}")]
    Json(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
