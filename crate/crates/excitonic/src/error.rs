//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the toolkit.
///
/// Residuals are carried as `f64` regardless of the scalar type so the error
/// type stays non-generic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("capacity exceeded: dimension {dim} above limit {max}")]
    CapacityExceeded { dim: usize, max: usize },

    #[error("matrix is not Hermitian: relative residual {residual:.3e}")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary: residual {residual:.3e} exceeds {limit:.3e}")]
    NotUnitary { residual: f64, limit: f64 },

    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("degenerate drive: zero amplitude at exact resonance leaves the cyclic pair undefined")]
    DegenerateDrive,

    #[error("evolution is not cyclic: |overlap| = {overlap:.12}, required at least 1 - {tolerance:.1e}")]
    NotCyclic { overlap: f64, tolerance: f64 },

    #[error("accuracy failure: {0}")]
    Accuracy(String),

    #[error(
        "integrator did not converge under refinement: {coarse_steps} -> {fine_steps} steps \
         changed the propagator by {residual:.3e} (tolerance {tolerance:.3e})"
    )]
    RefinementNotConverged {
        coarse_steps: usize,
        fine_steps: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error(
        "no two-loop cancellation exists for these drive parameters \
         (feasibility margin {margin:.3e} must be positive)"
    )]
    CancellationInfeasible { margin: f64 },

    #[error(
        "dynamic-phase cancellation failed: net dynamic phase {net_dynamic:.3e}, \
         schedule total {total:.6}, expected {expected_total:.6}; \
         per-loop (total, dynamic, geometric) = {loops:?}"
    )]
    CancellationFailed {
        net_dynamic: f64,
        total: f64,
        expected_total: f64,
        loops: Vec<(f64, f64, f64)>,
    },

    #[error(
        "gate decomposition mismatch: fidelity {fidelity:.12} with control on qubit 1, \
         {fidelity_alt:.12} with control on qubit 2; element matrices:\n{elements}"
    )]
    DecompositionMismatch {
        fidelity: f64,
        fidelity_alt: f64,
        elements: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
