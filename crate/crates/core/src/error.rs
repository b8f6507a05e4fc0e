use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient window [{n_min}, {n_max}] must satisfy n_min <= 0 <= n_max")]
    InvalidWindow { n_min: i64, n_max: i64 },
    #[error("expected {expected} coefficients for the window, got {actual}")]
    CoefficientCount { expected: usize, actual: usize },
    #[error("non-finite value at {0}")]
    NonFinite(String),
    #[error("point {re}+{im}i is not inside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },
    #[error("point {re}+{im}i is not on the unit circle (|z| = {modulus})")]
    OffCircle { re: f64, im: f64, modulus: f64 },
    #[error("grid size must be at least {min}, got {m}")]
    GridTooSmall { m: usize, min: usize },
    #[error("aliasing: grid size {m} must exceed 2 * n_max = {}", 2 * n_max)]
    Aliasing { m: usize, n_max: usize },
    #[error("radius {0} outside the admissible range")]
    InvalidRadius(f64),
    #[error("sample counts differ: {0} vs {1}")]
    GridMismatch(usize, usize),
    #[error("series kernel has imaginary residue {0}")]
    ImaginaryResidue(f64),
    #[error("no grid point satisfies |z - w| >= {rho}")]
    EmptyConstraintSet { rho: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sequence has nonzero coefficient at negative index {0}")]
    NegativeSupport(i64),
    #[error("operator norm iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("matrix has operator norm {0}, not a contraction")]
    NotContraction(f64),
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("input is not holomorphic (negative-index coefficients present)")]
    NotHolomorphic,
    #[error("gauge is only admissible for holomorphic input")]
    GaugeRequiresHolomorphic,
    #[error("sequence is empty")]
    EmptySequence,
    #[error("members do not share a common support window")]
    WindowMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
