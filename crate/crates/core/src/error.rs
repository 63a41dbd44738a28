use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by group, Fourier, verification and construction routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: BigUint, bound: u64 },

    #[error("search space of {size} elements exceeds the search bound {bound}")]
    SearchBound { size: u64, bound: u64 },

    #[error("search aborted after {nodes} nodes (node limit)")]
    NodeLimit { nodes: u64 },

    #[error("invalid group parameters: {0}")]
    InvalidGroup(String),

    #[error("modulus {target} does not divide {modulus}")]
    InvalidModulus { modulus: u64, target: u64 },

    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("prime {p} does not divide the modulus {n}")]
    PrimeNotDividing { p: u64, n: u64 },

    #[error("dimension {d} is smaller than p - 1 = {needed}")]
    Dimension { d: usize, needed: usize },

    #[error("points are not in general linear position")]
    NotInGeneralPosition,

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("no annihilated p-power class; the set is not a tile")]
    NotATile,

    #[error("no annihilated p-power class; tiling could not be decided: {0}")]
    NoAnnihilatedClass(String),

    #[error("not constructed: {0}")]
    NotConstructed(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
