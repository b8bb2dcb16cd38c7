use crate::conditions::{check_three_term_rank_conditions, Tolerances, Verdict};
use crate::error::{QsError, Result};
use crate::matrix::QMatrix;

use super::main_eq::{check_main, construct_solution};
use super::{Branch, FreeParameters, MainInstance, SolveReport};

#[derive(Clone, Debug)]
pub struct ThreeTermOutcome {
    pub report: SolveReport,
    pub y1: QMatrix,
    pub y2: QMatrix,
    pub y3: QMatrix,
}

impl MainInstance {
    /// `A11 Y1 B11 + A22 Y2 B22 + A33 Y3 B33 = T1` as a five-term instance
    /// with an `m × 0` `A1` and a `0 × n` `B1`.
    pub fn three_term(a11: &QMatrix, b11: &QMatrix, a22: &QMatrix, b22: &QMatrix, a33: &QMatrix, b33: &QMatrix, t1: &QMatrix) -> Self {
        let (m, n) = t1.shape();
        MainInstance {
            a1: QMatrix::zeros(m, 0),
            b1: QMatrix::zeros(0, n),
            a2: a11.clone(),
            b2: b11.clone(),
            a3: a22.clone(),
            b3: b22.clone(),
            a4: a33.clone(),
            b4: b33.clone(),
            b: t1.clone(),
        }
    }
}

/// Decides and solves `A11 Y1 B11 + A22 Y2 B22 + A33 Y3 B33 = T1`.
///
/// The report's rank conditions are the nine dedicated three-term equalities;
/// the projector conditions come from the padded five-term reduction.
/// `params` must be shaped for the padded instance (see
/// [`MainInstance::three_term`]).
#[allow(clippy::too_many_arguments)]
pub fn solve_three_term(
    a11: &QMatrix,
    b11: &QMatrix,
    a22: &QMatrix,
    b22: &QMatrix,
    a33: &QMatrix,
    b33: &QMatrix,
    t1: &QMatrix,
    params: &FreeParameters,
    branch: Branch,
    tol: &Tolerances,
) -> Result<ThreeTermOutcome> {
    let inst = MainInstance::three_term(a11, b11, a22, b22, a33, b33, t1);
    inst.validate()?;
    if params.shapes() != super::ParamShapes::for_dims(inst.dims()) {
        return Err(QsError::DimensionMismatch("free parameter shapes do not match the instance".into()));
    }
    let rank = check_three_term_rank_conditions(a11, b11, a22, b22, a33, b33, t1, tol)?;
    let (padded, derived) = check_main(&inst, tol)?;
    let mut report = SolveReport::new(rank, padded.projector_conditions, padded.supplementary);
    if report.verdict == Verdict::Inconsistent {
        return Err(QsError::Inconsistent { failing: report.failing() });
    }
    let sol = construct_solution(&inst, &derived, params, branch);
    report.residual = Some((&inst.apply(&sol)? - t1).frobenius_norm());
    Ok(ThreeTermOutcome { report, y1: sol.y1, y2: sol.y2, y3: sol.y3 })
}
