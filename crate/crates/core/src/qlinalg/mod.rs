//! Dense complex linear algebra for small multipartite systems.
//!
//! Storage is row-major and subsystem 0 is the most significant tensor
//! factor. Every operation here is a pure function of its inputs.

mod dims;
mod eigen;
mod matrix;
mod ops;
mod state;

pub use dims::{Dims, DimsPartition};
pub use eigen::{
    eig_hermitian, eigh, expm_anti_hermitian, psd_sqrt, singular_values, HermitianEigen,
};
pub use matrix::{ComplexMatrix, C64};
pub use ops::{partial_trace, partial_transpose, partial_transpose_raw, trace_norm};
pub use state::{validate_density, DensityDiagnostics, DensityMatrix, PureState};

/// Largest supported total Hilbert-space dimension.
pub const MAX_DIMENSION: usize = 64;

/// Validation tolerance for Hermiticity, trace and positivity.
pub const DEFAULT_TOL: f64 = 1e-9;
