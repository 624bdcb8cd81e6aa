use thiserror::Error;

use crate::linalg::DensityViolation;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M†| = {defect:e})")]
    NonHermitianInput { defect: f64 },

    #[error("matrix has non-finite entries")]
    NonFiniteInput,

    #[error("matrix is not unitary (max |UU† - I| = {defect:e})")]
    NonUnitaryInput { defect: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("not a valid density matrix: {}", fmt_violations(.0))]
    InvalidDensity(Vec<DensityViolation>),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate geometry: z12 = {z12:e} is below 1e-12")]
    DegenerateGeometry { z12: f64 },

    #[error("charging time must be non-negative, got tau = {tau}")]
    NegativeTau { tau: f64 },

    #[error("average power needs tau > 0, got tau = {tau}")]
    ZeroTime { tau: f64 },
}

fn fmt_violations(v: &[DensityViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
