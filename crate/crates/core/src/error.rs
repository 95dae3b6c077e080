use thiserror::Error;

use crate::complex::Simplex;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("simplex {0} is not a member of the complex")]
    NotFound(Simplex),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a subcomplex: {context} (offending simplex {witness})")]
    NotSubcomplex { context: String, witness: Simplex },

    #[error("vertex assignment is not simplicial: image of {source_simplex} is not a simplex of the target")]
    NotSimplicial { source_simplex: Simplex },

    #[error("map does not send {simplex} into the designated subcomplex")]
    NotMapOfPairs { simplex: Simplex },

    #[error("circuit is not orientable (conflict cycle of {} top simplices)", witness.len())]
    NonOrientable { witness: Vec<Simplex> },

    #[error("chain is not a cycle of the requested complex: {0}")]
    NotACycle(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("instance too large: {actual} simplices exceeds the cap of {cap}")]
    TooLarge { actual: usize, cap: usize },

    #[error("integer {0} does not fit in 64 bits")]
    Overflow(String),

    /// A pipeline stage did not pass. `completed` lists the stages that ran
    /// before it; nothing after it was executed.
    #[error("stage `{stage}` {}: {detail}", if *.unknown { "is undecided" } else { "failed" })]
    StageFailed {
        stage: String,
        unknown: bool,
        witness: Vec<Simplex>,
        detail: String,
        completed: Vec<String>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
