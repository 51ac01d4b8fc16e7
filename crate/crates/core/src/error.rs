use thiserror::Error;

use crate::complex::{Face, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex label must be nonzero")]
    ZeroVertex,

    #[error("malformed face {0:?}: repeated vertex")]
    MalformedFace(Vec<i32>),

    #[error("{0} is not a face of the complex")]
    NotAFace(Face),

    #[error("{0} is not an edge of the complex")]
    NotAnEdge(Face),

    #[error("survivor {survivor} is not an endpoint of {edge}")]
    SurvivorNotInEdge { edge: Face, survivor: VertexId },

    #[error("join requires disjoint vertex sets; shared vertex {0}")]
    NotDisjoint(VertexId),

    #[error("argument is not a subcomplex: {0} is missing")]
    NotASubcomplex(Face),

    #[error("complex is not pure: facet {0} has the wrong dimension")]
    NotPure(Face),

    #[error("centrally symmetric check failed: {0}")]
    CsViolation(String),

    #[error("quotient collapsed faces: f_{dim} is {quotient} but the cover has {cover}")]
    IdentificationCollision {
        dim: usize,
        cover: usize,
        quotient: usize,
    },

    #[error("orientation is not locally acyclic: {0}")]
    Orientation(String),

    #[error("certificate error: {0}")]
    Certificate(String),

    #[error("builder invariant violated: {0}")]
    BuilderInvariant(String),

    #[error("link condition fails for edge {0}; contraction is unsound")]
    ContractionUnsound(Face),

    #[error(
        "integral homology requested for dimension {dim} above the cap {cap}; \
         raise the cap or use GF(2) Betti numbers instead"
    )]
    HomologyCapExceeded { dim: usize, cap: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
