use thiserror::Error;

/// Coarse classification of failures, used by the CLI to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Resource,
    Consistency,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("divisor is not the divisor of a link: {0}")]
    NonLinkDivisor(String),

    #[error("divisor does not define a polynomial: exponent of Phi_{index} is {exponent}")]
    NotPolynomial { index: u64, exponent: i64 },

    #[error("gcd({p}, {modulus}) = {gcd}, expected 1{}", .position.map(|i| format!(" (ratio u_{i})")).unwrap_or_default())]
    NotCoprime {
        p: u64,
        modulus: u64,
        gcd: u64,
        position: Option<usize>,
    },

    #[error("budget exceeded: {needed} lattice points requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_)
            | Error::NonLinkDivisor(_)
            | Error::NotPolynomial { .. }
            | Error::NotCoprime { .. } => ErrorKind::Domain,
            Error::BudgetExceeded { .. } | Error::Resource(_) => ErrorKind::Resource,
            Error::Consistency(_) => ErrorKind::Consistency,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
