use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto stable exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The (matrix, group) pair cannot come from a map satisfying the
    /// standing assumptions (Jiang divisibility or integrality of graph
    /// Dold coefficients fails).
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),

    #[error("group enumeration cap exceeded: order {order} > cap {cap}")]
    EnumerationCap { order: u64, cap: u64 },

    #[error("witness search cap exceeded at max exponent {max_exponent}")]
    SearchCapExceeded { max_exponent: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
