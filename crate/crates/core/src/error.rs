use thiserror::Error;

use crate::graph::VertexId;
use crate::patterns::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {0} lies in both sides of a bipartite complementation")]
    OverlappingSides(VertexId),
    #[error("invalid graph6 input: {0}")]
    Graph6(String),
    #[error("invalid expression: {0}")]
    Expr(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid poset: {0}")]
    Poset(String),
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    OracleCap { n: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("graph is not in the class: contains induced {}", .0.pattern)]
    NotMember(Witness),
    /// A structural fact the construction relies on did not hold.
    #[error("{step}: {detail}")]
    Claim { step: String, detail: String, witness: Vec<VertexId> },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn claim(step: impl Into<String>, detail: impl Into<String>, witness: Vec<VertexId>) -> Error {
        Error::Claim { step: step.into(), detail: detail.into(), witness }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
