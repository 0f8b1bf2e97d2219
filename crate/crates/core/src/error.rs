use thiserror::Error;

/// Errors raised by the exact solvers, constructions and bound evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: size {size} exceeds the configured limit {limit}")]
    SizeLimitExceeded { what: &'static str, size: u64, limit: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("construction failed after {attempts} attempts: {reason}")]
    ConstructionFailed { attempts: usize, reason: String },
    #[error("coloring is not triangle-free")]
    NotTriangleFree,
    #[error("cover family leaves coordinate {coordinate} uncovered")]
    EmptyCover { coordinate: usize },
    #[error("game exceeded its caps ({vertices} vertices, {edges} edges) without a win")]
    LimitExceeded { vertices: usize, edges: usize },
    #[error("host has {actual} vertices but the reduction needs at least {required}")]
    HostTooSmall { required: u64, actual: usize },
    #[error("candidate set emptied after {steps} steps")]
    CandidateUnderflow { steps: usize },
    #[error("threshold painter called with an empty candidate set")]
    EmptyCandidates,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_limit(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimitExceeded {
            what,
            size: size as u64,
            limit: limit as u64,
        })
    } else {
        Ok(())
    }
}
