use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidExtensionDegree(u32),
    #[error("GF({p}^{ell}) does not fit in 32-bit element codes")]
    FieldTooLarge { p: u32, ell: u32 },
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("no irreducible polynomial of degree {ell} over GF({p}) was found")]
    NoIrreducible { p: u32, ell: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{what}: expected length {expected}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("symbol {symbol} is not an element of GF({p})")]
    SymbolOutOfRange { symbol: u32, p: u32 },
    #[error("code symbols are stored as bytes, GF({0}) is too large")]
    AlphabetTooLarge(u32),
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("h = {h} is not a power of p = {p}")]
    IncompatibleField { h: u32, p: u32 },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("random regular graph generation failed after {attempts} attempts; try another seed")]
    GraphGenerationFailed { attempts: usize },
    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("inner code length {inner} does not match graph degree {degree}")]
    DegreeMismatch { inner: usize, degree: usize },
    #[error("generator basis has not been computed")]
    GeneratorUnavailable,
    #[error("rate bound violated: k = {k}, N = {n}, inner dimension {k0} of length {d}")]
    RateBoundViolated {
        k: usize,
        n: usize,
        k0: usize,
        d: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("tree shapes differ")]
    ShapeMismatch,
    #[error("position {position} out of range for length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("config error: {0}")]
    Config(String),
    #[error("artifact error: {0}")]
    Artifact(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
