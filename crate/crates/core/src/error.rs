use std::fmt;

use thiserror::Error;

/// Symmetry generators that a sector basis can be built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Parity,
    ZReflection,
    Magnetization,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Symmetry::Parity => "spatial parity P",
            Symmetry::ZReflection => "Z-reflection (global spin flip)",
            Symmetry::Magnetization => "total magnetization",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("coupling requested for the degenerate pair ({0}, {0})")]
    DegeneratePair(usize),

    #[error("site {site} is outside 1..={sites}")]
    SiteOutOfRange { site: usize, sites: usize },

    #[error("invalid sector: {0}")]
    InvalidSector(String),

    #[error("the requested symmetry sector is empty")]
    EmptySector,

    #[error("operator does not commute with {symmetry} (max residual {residual:e})")]
    SymmetryViolation { symmetry: Symmetry, residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("seed operator has zero norm")]
    ZeroSeed,

    #[error("Lanczos coefficient b_{index} = {value} is not positive")]
    NonPositiveCoefficient { index: usize, value: f64 },

    #[error("matrix is not Hermitian (max |H - H^dagger| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("need at least 3 levels, got {0}")]
    TooFewLevels(usize),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {0}")]
    ResourceExhausted(String),

    #[error("eigensolver failed to converge")]
    Eigensolver,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
