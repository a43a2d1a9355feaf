use thiserror::Error;

/// Errors raised by ring construction and the algebraic checks built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("axiom violated: {axiom} at {witness:?}")]
    AxiomViolation {
        axiom: &'static str,
        witness: Vec<usize>,
    },
    #[error("operation requires a nonzero ring")]
    ZeroRing,
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("not an ideal: {0}")]
    InvalidIdeal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("invalid split triple: {0}")]
    InvalidTriple(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("polynomial moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial has degree < 1")]
    DegreeZero,
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(AlgebraError::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
