use thiserror::Error;

use crate::antimatroid::AxiomViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex `{0}` appears more than once")]
    DuplicateVertex(String),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),

    #[error("edge ({0}, {1}) must join a left vertex to a right vertex")]
    BadEdgeEndpoints(String, String),

    #[error("edge index {0} is out of range")]
    InvalidEdgeIndex(usize),

    #[error("edge set is not a matching: vertex `{0}` is covered twice")]
    NotAMatching(String),

    #[error("`{0}` is not a left vertex")]
    NotLeftVertex(String),

    #[error("oracle limit exceeded: {edges} edges > limit {limit}")]
    OracleLimit { edges: usize, limit: usize },

    #[error("sweep limit exceeded: {size} > limit {limit}")]
    SweepLimit { size: usize, limit: usize },

    #[error("preference list for `{vertex}`: {reason}")]
    BadPreferences { vertex: String, reason: String },

    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },

    #[error("cannot parse weight `{0}` exactly")]
    BadWeight(String),

    #[error("ground set has {size} elements; at most {limit} are supported")]
    GroundTooLarge { size: usize, limit: usize },

    #[error("set member `{0}` is not in the ground set")]
    UnknownElement(String),

    #[error("not an antimatroid: {0}")]
    NotAntimatroid(AxiomViolation),

    #[error("decoration does not fit the family: {0}")]
    BadDecoration(String),

    #[error("malformed input: {0}")]
    Parse(String),
}
