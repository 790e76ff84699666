use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
    #[error("edge {0} does not exist")]
    InvalidEdge(usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid flow network: {0}")]
    InvalidNetwork(String),
    #[error("hyperedge {0} is empty")]
    InvalidHyperedge(usize),
    #[error("p-mean objective is undefined on graphs with self-loops")]
    UnsupportedSelfLoop,
    #[error("vertex {0} already belongs to the base set")]
    InvalidMarginal(usize),
    #[error("ground set of size {size} exceeds the exhaustive cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("invalid oracle: {0}")]
    InvalidOracle(String),
    #[error("invalid epsilon: {0}")]
    InvalidEpsilon(String),
    #[error("invalid cost for vertex {0}")]
    InvalidCost(usize),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("deletion set contains infinite-cost vertex {0}")]
    NotFiniteCost(usize),
    #[error("not feasible: {0}")]
    NotFeasible(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidVertex(_) => "invalid_vertex",
            Error::InvalidEdge(_) => "invalid_edge",
            Error::EmptyGraph => "empty_graph",
            Error::InvalidNetwork(_) => "invalid_network",
            Error::InvalidHyperedge(_) => "invalid_hyperedge",
            Error::UnsupportedSelfLoop => "unsupported_self_loop",
            Error::InvalidMarginal(_) => "invalid_marginal",
            Error::TooLarge { .. } => "too_large",
            Error::InvalidOracle(_) => "invalid_oracle",
            Error::InvalidEpsilon(_) => "invalid_epsilon",
            Error::InvalidCost(_) => "invalid_cost",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::UnsupportedInstance(_) => "unsupported_instance",
            Error::NotFiniteCost(_) => "not_finite_cost",
            Error::NotFeasible(_) => "not_feasible",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Parse { .. } => "parse",
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
