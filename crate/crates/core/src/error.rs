use thiserror::Error;

/// Errors raised by the arithmetic, series and criterion layers.
///
/// Uncertainty that the algorithms can describe in-band (a `LOWER_BOUND`
/// dimension, an `UNKNOWN` hypothesis) is reported in the result types, not
/// through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p^{exponent} does not fit in a 64-bit residue for p = {p}")]
    PrecisionOverflow { p: u64, exponent: u32 },
    #[error("insufficient precision: need {needed} p-adic digits, have {available}")]
    InsufficientPrecision { needed: u32, available: u32 },
    #[error("mismatched primes {0} and {1}")]
    MismatchedPrime(u64, u64),
    #[error("series is not a unit: constant term is divisible by p")]
    NotAUnit,
    #[error("series is not in the maximal ideal (p, T): constant term is a unit")]
    NotInMaximalIdeal,
    #[error("mu/lambda cannot be certified within the stored window")]
    UncertifiedInput,
    #[error("window too small: lambda = {lambda} but only {window} coefficients are stored")]
    WindowTooSmall { lambda: usize, window: usize },
    #[error("neither I_alpha nor I_-alpha has a certified dimension")]
    Uncertified,
    #[error("brute-force quotient dimension is not stable ({0})")]
    Unstable(String),
    #[error("need at least 4 data points, got {0}")]
    InsufficientData(usize),
    #[error("polynomial is reducible over Q")]
    Reducible,
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("fields are not linearly disjoint")]
    NotDisjoint,
    #[error("missing records for parameters: {}", .0.join(", "))]
    MissingRecords(Vec<String>),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
