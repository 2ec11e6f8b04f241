use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 65535")]
    PrimeTooLarge(u64),
    #[error("prime {p} must exceed the algebra dimension {dim}")]
    PrimeTooSmall { p: u32, dim: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("the given identity is not a two-sided unit")]
    MissingIdentity,
    #[error("ideal is not closed under {0} multiplication")]
    NotClosed(&'static str),
    #[error("ideal is not two-sided")]
    NotTwoSided,
    #[error("cannot form the quotient by the whole algebra")]
    WholeAlgebra,
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("idempotent must be nonzero")]
    ZeroIdempotent,
    #[error("ideal sides are incompatible for this operation")]
    SideMismatch,
    #[error("subalgebra closure exceeds {0} dimensions")]
    ClosureTooLarge(usize),
    #[error("resource guard exceeded: {what} needs {needed}, guard is {guard}")]
    GuardExceeded { what: &'static str, needed: u128, guard: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Returns `Error::Invariant` from the enclosing function when `cond` is false.
macro_rules! ensure_invariant {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure_invariant;
