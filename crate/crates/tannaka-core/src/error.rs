use alloc::string::String;

use crate::report::Report;

/// Errors raised by the core library.
///
/// Label-carrying variants use label names, not indices, so they can be shown to users directly.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is singular to tolerance (smallest |eigenvalue| {min_abs_eig:.3e})")]
    SingularToTolerance { min_abs_eig: f64 },
    #[error("fusion channel outside the loaded window: {i} x {j}")]
    WindowEscape { i: String, j: String },
    #[error("natural transformation has no block for label {0}")]
    MissingBlock(String),
    #[error("dual of label {0} is not loaded")]
    MissingDual(String),
    #[error("conjugate data for label {label} is inconsistent (residual {residual:.3e})")]
    ConjInconsistent { label: String, residual: f64 },
    #[error("bundle failed validation ({} failing checks)", .0.failures().count())]
    InvalidBundle(Report),
    #[error("linear system has no consistent solution: {0}")]
    InconsistentSolve(String),
    #[error("operation requires a finite closed bundle")]
    NotFinite,
    #[error("defining system of the universal corepresentation is inconsistent: {0}")]
    DefiningSystemInconsistent(String),
    #[error("bundle carries no braiding")]
    NoBraiding,
    #[error("bad group presentation: {0}")]
    BadPresentation(String),
    #[error("Jones-Wenzl projector is degenerate: [{m}]_q = {value:.3e}")]
    DegenerateProjector { m: usize, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = core::result::Result<T, Error>;
