use thiserror::Error;

use crate::VertexId;

/// Everything that can go wrong in this crate.
///
/// `ResourceLimit` is the only variant that means "answer unknown"; every other
/// variant is a definite rejection of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("{0:?} is not a simplex of the parent complex")]
    NotASimplex(Vec<VertexId>),

    #[error("subcomplexes belong to different parent complexes")]
    ParentMismatch,

    #[error("vertex assignment is not simplicial: image of {simplex:?} is not a simplex")]
    NotSimplicial { simplex: Vec<VertexId> },

    #[error("domain/codomain mismatch: {0}")]
    DomainMismatch(&'static str),

    #[error("complex is not connected")]
    DisconnectedComplex,

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("pasted maps disagree at vertex {vertex}")]
    AgreementFailure { vertex: VertexId },

    #[error("factorization gluing failed: {0}")]
    PasteFailure(String),

    #[error("order relation has a cycle through {0:?} (not a T0 space)")]
    NotT0(String),

    #[error("fiber over vertex {0} is empty")]
    EmptyFiber(VertexId),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn limit(what: &'static str, limit: usize) -> Self {
        Error::ResourceLimit { what, limit }
    }

    /// True when the failure means the question was left undecided.
    pub fn is_unknown(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
