use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which resource cap a prediction ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Objects,
    Morphisms,
    Compositions,
    Summands,
}

impl std::fmt::Display for Resource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Resource::Objects => "objects",
            Resource::Morphisms => "morphisms",
            Resource::Compositions => "compositions",
            Resource::Summands => "summands",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational {input:?}: {reason}")]
    InvalidRational { input: String, reason: &'static str },

    #[error("lower parameter #{index} is {value}, only positive rationals are supported")]
    NonPositiveLowerParameter { index: usize, value: String },

    #[error("resource limit exceeded: {predicted} {resource} predicted, limit is {limit}")]
    ResourceLimitExceeded {
        resource: Resource,
        predicted: u128,
        limit: u128,
    },

    #[error("invalid groupoid: {count} violation(s), first: {first}")]
    InvalidGroupoid { count: usize, first: String },

    #[error("composition requires the inner species to be empty on the empty set")]
    CompositionRequiresZeroFree,

    #[error("series composition requires the inner series to have zero constant term")]
    CompositionRequiresZeroConstant,

    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("unknown builtin species {0:?}")]
    UnknownBuiltin(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimitExceeded { .. })
    }
}
