use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the mathematical domain was violated (division by
    /// zero, negative power of zero, excluded parameter value, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Brute-force enumeration would visit more tuples than the configured cap.
    #[error("enumeration of {tuples} tuples exceeds cap {cap}")]
    EnumerationCap { tuples: u128, cap: u128 },

    /// Identity id not present in the registry.
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    /// Malformed textual input (rational literal, composition, grid spec, ...).
    #[error("parse error: {0}")]
    Parse(String),

    /// Index out of range, e.g. a partial weight past the depth.
    #[error("index {index} out of range for depth {depth}")]
    IndexRange { index: usize, depth: usize },

    /// A required parameter slot is missing from a parameter point.
    #[error("identity `{identity}` requires parameter `{slot}`")]
    MissingParam { identity: String, slot: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
