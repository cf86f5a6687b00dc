use thiserror::Error;

/// Errors raised by the exact and numerical pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("leading coefficient of the divisor is not invertible")]
    NonInvertibleLeading,

    #[error("valuation of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not nilpotent within {0} steps")]
    NotNilpotent(usize),

    #[error("matrix does not have determinant 1")]
    DeterminantNotOne,

    #[error("matrix does not have trace 0")]
    NonzeroTrace,

    #[error("degenerate cohomology basis: b = a*tau")]
    DegenerateBasis,

    #[error("cocycle rule fails on relator {0}")]
    CocycleRelator(String),

    #[error("peripheral image is not unipotent up to the lift sign")]
    NotUnipotent,

    #[error("duplicate index {0}")]
    DuplicateIndex(usize),

    #[error("missing index {0}")]
    MissingIndex(usize),

    #[error("undefined generator `{0}`")]
    UndefinedGenerator(String),

    #[error("relator {relator} evaluates to a non-central element")]
    NonCentralRelator { relator: String },

    #[error("peripheral word {word} is not parabolic")]
    NotParabolic { word: String },

    #[error("peripheral words {0} and {1} do not commute")]
    NonCommuting(String, String),

    #[error("cusp shape is real; the peripheral lattice is degenerate")]
    RealCuspShape,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("Newton iteration diverged after {iterations} steps (residual {residual:e})")]
    Divergence { iterations: usize, residual: f64 },

    #[error("Jacobian rank {rank} below required {required}")]
    RankDeficient { rank: usize, required: usize },

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
