use thiserror::Error;

use crate::conditions::ConditionReport;
use crate::quaternion::EtaAxis;

#[derive(Debug, Error)]
pub enum QsError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("division by the zero quaternion")]
    ZeroDivision,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("complex matrix is not in quaternion adjoint form (deviation {deviation:.3e} exceeds {tolerance:.3e})")]
    StructureViolation { deviation: f64, tolerance: f64 },

    #[error("SVD did not converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("matrix is not {eta}-Hermitian (deviation {deviation:.3e})")]
    NotEtaHermitian { eta: EtaAxis, deviation: f64 },

    #[error("side condition {name} violated (residual {residual:.3e})")]
    SideConditionViolated { name: String, residual: f64 },

    #[error("equation is inconsistent; failing conditions: {}", failing_names(.failing))]
    Inconsistent { failing: Vec<ConditionReport> },

    #[error("generation failed: {0}")]
    GenerationFailed(String),
}

fn failing_names(reports: &[ConditionReport]) -> String {
    let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    if names.is_empty() {
        "none recorded".to_string()
    } else {
        names.join(", ")
    }
}

pub type Result<T> = std::result::Result<T, QsError>;
