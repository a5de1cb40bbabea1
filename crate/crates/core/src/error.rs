use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced anywhere in the crate.
#[derive(Error, Debug)]
pub enum Error {
    /// Invalid or mismatched scheme parameters (dimensions, moduli, lengths).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A plaintext outside its message space.
    #[error("message {value} out of range for modulus {modulus}")]
    MessageRange { value: String, modulus: String },

    #[error("index {index} out of range (must be < {bound})")]
    Index { index: usize, bound: usize },

    /// Malformed bytes: truncated input, bad magic, out-of-range group element.
    #[error("format error: {0}")]
    Format(String),

    /// The additive plaintext space is too small for the lattice parameters.
    #[error("incompatible parameters: {0}")]
    Incompatible(String),

    #[error("key generation failed: {0}")]
    Generation(String),

    #[error("key mismatch: {0}")]
    KeyMismatch(String),

    #[error("batch error: {0}")]
    Batch(String),

    #[error("protocol error: {0}")]
    Protocol(String),

    /// The server refused to evaluate a function whose noise growth would
    /// exceed the decryption margin.
    #[error("noise budget exhausted: {0}")]
    NoiseBudget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn range(value: impl ToString, modulus: impl ToString) -> Self {
        Error::MessageRange {
            value: value.to_string(),
            modulus: modulus.to_string(),
        }
    }
}
