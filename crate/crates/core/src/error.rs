use thiserror::Error;

/// Errors raised by the numerical core.
///
/// Structural errors mean two pieces of data disagree about their shape;
/// argument errors mean a value is outside the operation's domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    #[error("total dimension {0} exceeds the supported maximum of {max}", max = crate::qlinalg::MAX_DIMENSION)]
    DimensionCap(usize),

    #[error("invalid subsystem index {index} for a {count}-partite system")]
    InvalidSubsystem { index: usize, count: usize },

    #[error("subsystem set must be a nonempty proper subset, got {0:?}")]
    InvalidCut(Vec<usize>),

    #[error("matrix is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("invalid argument: {0}")]
    Argument(String),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// True for shape disagreements, false for domain violations.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. } | Error::NotSquare { .. } | Error::NonFinite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
