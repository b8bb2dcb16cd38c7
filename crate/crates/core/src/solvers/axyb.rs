use crate::conditions::{ConditionForm, ConditionReport, Tolerances};
use crate::decomp::Factored;
use crate::error::{QsError, Result};
use crate::matrix::QMatrix;

use super::chain;

/// Result of `A1 X + Y B1 = C1`.
#[derive(Clone, Debug)]
pub struct AxybOutcome {
    /// `R_{A1} C1 L_{B1} = 0`
    pub condition: ConditionReport,
    pub x: QMatrix,
    pub y: QMatrix,
}

impl AxybOutcome {
    pub fn consistent(&self) -> bool {
        self.condition.holds
    }
}

/// General solution of `A1 X + Y B1 = C`:
/// `X = A1†C − A1†U1B1 + L_{A1}U2`, `Y = R_{A1}CB1† + A1A1†U1 + U3R_{B1}`.
pub fn axyb_formula(
    a1: &Factored,
    b1: &Factored,
    c: &QMatrix,
    u1: &QMatrix,
    u2: &QMatrix,
    u3: &QMatrix,
) -> (QMatrix, QMatrix) {
    let x = &(&(&a1.pinv * c) - &chain(&[&a1.pinv, u1, &b1.mat])) + &(&a1.left * u2);
    let y = &(&chain(&[&a1.right, c, &b1.pinv]) + &chain(&[&a1.mat, &a1.pinv, u1])) + &(u3 * &b1.right);
    (x, y)
}

/// Decides and solves `A1 X + Y B1 = C1` with free parameters `U1` (`m × q`),
/// `U2` (`p × n`) and `U3` (`m × q`).
pub fn solve_axyb(
    a1: &QMatrix,
    b1: &QMatrix,
    c1: &QMatrix,
    u: [&QMatrix; 3],
    tol: &Tolerances,
) -> Result<AxybOutcome> {
    let (m, n) = c1.shape();
    if a1.rows() != m || b1.cols() != n {
        return Err(QsError::DimensionMismatch(format!(
            "A1 {}x{}, B1 {}x{} do not fit C1 {m}x{n}",
            a1.rows(),
            a1.cols(),
            b1.rows(),
            b1.cols()
        )));
    }
    let (p, q) = (a1.cols(), b1.rows());
    for (name, mat, shape) in [("U1", u[0], (m, q)), ("U2", u[1], (p, n)), ("U3", u[2], (m, q))] {
        if mat.shape() != shape {
            return Err(QsError::DimensionMismatch(format!(
                "{name} must be {}x{}, got {}x{}",
                shape.0,
                shape.1,
                mat.rows(),
                mat.cols()
            )));
        }
    }
    let fa = Factored::new(a1.clone(), tol.rank)?;
    let fb = Factored::new(b1.clone(), tol.rank)?;
    let residual = chain(&[&fa.right, c1, &fb.left]).max_entry_norm();
    let condition = ConditionReport {
        name: "RA1C1LB1".to_string(),
        form: ConditionForm::Projector,
        lhs_rank: None,
        rhs_rank: None,
        residual: Some(residual),
        holds: residual <= tol.residual,
        indeterminate: residual > tol.residual / 10.0 && residual <= tol.residual * 10.0,
    };
    let (x, y) = axyb_formula(&fa, &fb, c1, u[0], u[1], u[2]);
    Ok(AxybOutcome { condition, x, y })
}
