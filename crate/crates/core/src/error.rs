use thiserror::Error;

/// Errors raised by the lattice, simplex, space and orbit routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero vector has no primitivity")]
    ZeroVector,
    #[error("rows cannot be extended to a basis of Z^{0}")]
    NotExtendable(usize),
    #[error("coset precondition failed: {0}")]
    BadCoset(&'static str),
    #[error("homogeneous vector is not primitive")]
    NotPrimitive,
    #[error("homogeneous vector has non-positive last entry")]
    NonPositiveLast,
    #[error("simplex is not regular")]
    NotRegular,
    #[error("vertices are not affinely independent")]
    NotAffinelyIndependent,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("point does not lie in the affine space")]
    PointNotInSpace,
    #[error("inconsistent equation system")]
    InconsistentSystem,
    #[error("invalid invariant triple (e={e}, d={d}, c={c}) for n={n}")]
    BadTriple {
        e: usize,
        d: String,
        c: String,
        n: usize,
    },
    #[error("points use different symbol bases")]
    BasisMismatch,
    #[error("group rank {rank} exceeds n + 1 = {limit}")]
    RankTooLarge { rank: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal verification failed: {0}")]
    InternalVerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
