use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("chart point |p| = {norm} lies outside the admissible ball (|p| < 1 - {guard})")]
    ChartDomain { norm: f64, guard: f64 },

    #[error("quaternion norm {norm} deviates from 1 by more than {tolerance}")]
    QuaternionNorm { norm: f64, tolerance: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("state became non-finite at step {step}")]
    NonFiniteState { step: usize },

    #[error("inadmissible parameters: {0}")]
    Admissibility(String),

    #[error("degenerate equilibrium: {0}")]
    DegenerateEquilibrium(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
