use thiserror::Error;

/// Errors raised by the arithmetic core and the decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid prime: {0} is not prime")]
    InvalidPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("overflow: {0} exceeds the 64-bit range")]
    Overflow(String),

    #[error("shape mismatch: order {left_order} mod {left_modulus} vs order {right_order} mod {right_modulus}")]
    ShapeMismatch {
        left_order: usize,
        left_modulus: u64,
        right_order: usize,
        right_modulus: u64,
    },

    #[error("too large: order {order} exceeds the dense bound {bound}")]
    TooLarge { order: usize, bound: usize },

    #[error("coprimality violated: gcd({d}, {other}) = {gcd}")]
    CoprimalityViolated { d: u64, other: u64, gcd: u64 },

    #[error("divisibility violated: n* = {n_star} does not divide m* = {m_star}")]
    DivisibilityViolated { n_star: u64, m_star: u64 },

    #[error("enumeration budget exceeded: {needed} tuples > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow(what.into())
    }

    /// Short machine-friendly name used on the CLI diagnostic stream.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Overflow(_) => "Overflow",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::CoprimalityViolated { .. } => "CoprimalityViolated",
            Error::DivisibilityViolated { .. } => "DivisibilityViolated",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
