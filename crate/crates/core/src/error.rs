use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("image {image} of point {point} is outside [0, {n})")]
    ImageOutOfRange {
        point: usize,
        image: usize,
        n: usize,
    },

    #[error("a transformation needs at least one point")]
    EmptyDomain,

    #[error("invariant subset must be nonempty")]
    EmptySubset,

    #[error("point {point} is outside [0, {n})")]
    PointOutOfRange { point: usize, n: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("entry {value} is not reduced modulo {p}")]
    EntryOutOfRange { value: u64, p: u32 },

    #[error("operands live over different fields (p = {left} vs p = {right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invariance violated: {0}")]
    InvarianceViolated(String),

    #[error("element is not unit-regular")]
    NotUnitRegular,

    #[error("enumeration size {size} exceeds bound {bound}")]
    BoundExceeded { size: u128, bound: u128 },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("inner subspace is not contained in outer subspace")]
    ContainmentViolated,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("cardinality overflows 128 bits")]
    Overflow,
}
