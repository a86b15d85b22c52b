use thiserror::Error;

/// Errors raised by the coefficient machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("twist has length {got}, expected rank {rank}")]
    TwistLength { got: usize, rank: usize },
    #[error("vector {0:?} is not a positive root")]
    NotPositiveRoot(Vec<i64>),
    #[error("vector {0:?} is not in the root lattice")]
    NotInRootLattice(Vec<i64>),
    #[error("invalid Weyl element: {0}")]
    InvalidWeylElement(String),
    #[error("top row {0:?} is not weakly decreasing and nonnegative")]
    BadTopRow(Vec<i64>),
    #[error("top row {0:?} is not strictly decreasing")]
    TopRowNotStrict(Vec<i64>),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid position {0}")]
    InvalidPosition(String),
    #[error("negative k-vector component k_{index} = {value}")]
    NegativeK { index: usize, value: i64 },
    #[error("parity violation reconstructing k_1: 2k_1 = {0}")]
    Parity(i64),
    #[error("pattern is not strict")]
    NotStrict,
    #[error("pattern is not stable")]
    NotStable,
    #[error("n = {n} is below the stability bound {bound}")]
    BelowStabilityBound { n: u32, bound: u32 },
    #[error("n = {0} is even; the stable formula is only claimed for odd n")]
    EvenDegree(u32),
    #[error("degree n must be at least 1")]
    ZeroDegree,
    #[error("{p} is not a prime congruent to 1 mod {n}")]
    BadPrime { p: u64, n: u32 },
    #[error("brute-force sum over {0} residues exceeds the 10^7 guard")]
    TooManySummands(u128),
    #[error("gauss value degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("bound {0} exceeds the enumeration guard")]
    BoundTooLarge(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
