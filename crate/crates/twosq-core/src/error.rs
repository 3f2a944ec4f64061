use thiserror::Error;

/// Errors shared across the toolkit.
///
/// `FactorLimitExceeded` and `PrecisionExhausted` are first-class outcomes:
/// sweeps record and quarantine them instead of treating them as bugs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A cofactor resisted the configured factoring effort.
    #[error("factor limit exceeded for {n} after {rounds} rho rounds")]
    FactorLimitExceeded { n: String, rounds: u64 },

    /// An interval predicate stayed ambiguous at the maximum working precision.
    #[error("precision exhausted at {bits} bits while deciding {context}")]
    PrecisionExhausted { bits: u32, context: String },

    /// Input violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A Laurent-lemma condition failed; the payload names which one.
    #[error("condition {0} failed")]
    ConditionFailed(&'static str),

    /// Threshold search hit its cap without closing the contradiction.
    #[error("no threshold found below cap {cap}")]
    NoThreshold { cap: u64 },

    /// Fixed-point derivation exceeded the fact cap (indicates a rule bug).
    #[error("divergence cap: more than {0} facts derived")]
    DivergenceCap(usize),

    /// Certificate or config (de)serialization problem.
    #[error("serialization: {0}")]
    Serialization(String),

    /// Sweep configuration rejected.
    #[error("config error: {0}")]
    Config(String),

    /// I/O wrapper for sweep persistence.
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
