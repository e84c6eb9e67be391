use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHom(String),

    #[error("coefficient {0} not present in both invariants")]
    MissingCoefficient(u64),

    #[error("extension class count {count} exceeds the enumeration bound {bound}")]
    EnumerationBound { count: BigInt, bound: u64 },

    #[error("vertex set is not hereditary: vertex {vertex} has an edge leaving the set")]
    NonHereditary { vertex: usize },

    #[error("invalid matrix for a Cuntz-Krieger algebra: {0}")]
    InvalidCkMatrix(String),

    #[error("six-term sequence failed its exactness gate at node {node}; connecting map construction is wrong")]
    ExactnessGate { node: usize },

    #[error("torsion at position {position}: mod-n data must be supplied explicitly")]
    TorsionInput { position: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram has no reducible exact constraint through the unknown; cannot enumerate candidates")]
    NoCandidateConstraint,

    #[error("unknown catalog entry: {0}")]
    UnknownCatalogEntry(String),

    #[error("integer out of the 128-bit range supported by the JSON layer")]
    JsonRange,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
