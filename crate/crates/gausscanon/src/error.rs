//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Returned when a matrix that should be square is not.
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    /// Returned when a phase-space matrix does not have an even dimension.
    #[error("dimension {0} is not of the form 2n")]
    OddDimension(usize),

    /// Returned when two objects refer to different numbers of modes.
    #[error("mode count mismatch: {0} vs {1}")]
    ModeMismatch(usize, usize),

    /// Returned when a matrix fails the symmetry check.
    #[error("matrix asymmetry {0:.3e} exceeds tolerance")]
    NotSymmetric(f64),

    /// Returned when a matrix expected to be positive definite is not.
    #[error("matrix is not positive definite (min eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),

    /// Returned when a covariance matrix violates the uncertainty relation.
    #[error("not a physical covariance matrix (min eigenvalue of gamma - iJ is {0:.3e})")]
    NotPhysical(f64),

    /// Returned when an operation requires a pure state.
    #[error("state is not pure (purity defect {0:.3e})")]
    NotPure(f64),

    /// Returned when the two purity tests (symplectic and determinant) disagree.
    #[error("purity checks disagree: |gamma J gamma - J| = {residual:.3e}, |det gamma - 1| = {det_defect:.3e}")]
    PurityInconsistent { residual: f64, det_defect: f64 },

    /// Returned when a matrix fails the symplectic-form preservation check.
    #[error("matrix is not symplectic (max |S J S^T - J| = {0:.3e})")]
    NotSymplectic(f64),

    /// Returned when a purity triple is not realizable by a pure state.
    /// The payload carries the violated inequality verbatim.
    #[error("{0}")]
    InvalidPurities(String),

    /// Returned when an argument is outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Returned when a linear solve would involve a near-singular matrix.
    #[error("ill-conditioned matrix (condition number estimate {0:.3e})")]
    IllConditioned(f64),

    /// Returned when an iterative solver does not converge.
    #[error("solver failed: {0}")]
    SolverFailed(String),

    /// Returned when inputs select a solution branch that is not implemented.
    #[error("unsupported branch: {0}")]
    UnsupportedBranch(String),

    /// Returned on malformed JSON input.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// Returned on file I/O problems.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
