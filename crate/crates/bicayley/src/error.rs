use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A multiplication table failed a group axiom. `axiom` names the one
    /// that broke (closure, identity, inverse, associativity).
    #[error("group construction failed ({axiom}): {detail}")]
    GroupConstruction { axiom: &'static str, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exhaustive computation was asked to run above its configured bound.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The operation is mathematically undefined for this input
    /// (e.g. arc connectivity of a digraph that is not strongly connected).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural property that is expected to hold on every valid input
    /// failed. These are surfaced loudly: they mean either an implementation
    /// bug or a counterexample to a claimed invariant.
    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("descriptor parse error: {0}")]
    Descriptor(String),

    #[error("malformed table file: {0}")]
    TableFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
