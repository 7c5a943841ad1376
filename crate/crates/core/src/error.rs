use thiserror::Error;

use crate::proximity::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("carrier is empty; a bounded lattice needs at least one element")]
    EmptyCarrier,

    #[error("carrier of size {0} exceeds the supported maximum of 256")]
    TooLarge(usize),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("order is not a partial order: {0}")]
    NotAPartialOrder(String),

    /// `a` and `b` have no {bound} in the order.
    #[error("not a lattice: elements {a} and {b} have no {bound}")]
    NotALattice {
        a: String,
        b: String,
        bound: &'static str,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("relation violates the proximity lattice axioms")]
    AxiomsViolated(Box<AxiomReport>),

    #[error("proximity lattice is not join-strong")]
    NotJoinStrong,

    #[error("proximity lattice is not meet-strong")]
    NotMeetStrong,

    #[error("proximity lattice is not doubly strong")]
    NotDoublyStrong,

    #[error("underlying lattice is not distributive")]
    NotDistributive,

    #[error("relation is not a proximity morphism")]
    NotAProximityMorphism,

    #[error("relation is not a j-morphism")]
    NotAJMorphism,

    #[error("relation is not an m-morphism")]
    NotAnMMorphism,

    #[error("extension kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("map is not a {0}-canonical extension")]
    NotAnExtension(&'static str),

    #[error("malformed transpose input: {0}")]
    MalformedTranspose(String),

    #[error("invalid round subset: {0}")]
    InvalidRoundSubset(String),

    #[error("space is not T0")]
    NotT0,

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("map is not a continuous retraction")]
    NotARetraction,

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("parse error: {0}")]
    Parse(String),
}
