use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("basis vectors are not linearly independent over the rationals")]
    DependentBasis,

    #[error("not an antichain lattice: {0}")]
    NotAntichain(String),

    #[error("point {0} is not in the lattice")]
    NotInLattice(String),

    #[error("point {0} is not in the set")]
    NotInSet(String),

    #[error("representatives {0} and {1} are congruent modulo the lattice")]
    CongruentReps(String, String),

    #[error("exact search is not available for this lattice ({0}); supply a search radius")]
    WindowRequired(String),

    #[error("neighbor set is infinite: {0}")]
    InfiniteNeighborSet(String),

    #[error("not generic: {0}")]
    NotGeneric(String),

    #[error("Markov basis verification failed: {0}")]
    MarkovVerification(String),

    #[error("negative exponent in cellular coefficient at {0}")]
    NegativeCellularExponent(String),

    #[error("complex is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("expected mode {0} for this operation")]
    WrongMode(&'static str),

    #[error("strand is infinite for class {0}")]
    InfiniteStrand(String),

    #[error("lifting failed: {0}")]
    Lifting(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
