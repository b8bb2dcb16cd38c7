use crate::conditions::{check_eta_rank_conditions, Tolerances, Verdict};
use crate::error::{QsError, Result};
use crate::matrix::QMatrix;
use crate::quaternion::EtaAxis;

use super::main_eq::{check_main, construct_solution};
use super::{Branch, FreeParameters, MainInstance, SolveReport};

/// `A1 X1 + (A1 X1)^{η*} + A2 Y1 A2^{η*} + A3 Y2 A3^{η*} + A4 Y3 A4^{η*} = B`
/// with `B` η-Hermitian and `Y_i` sought η-Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaInstance {
    pub a1: QMatrix,
    pub a2: QMatrix,
    pub a3: QMatrix,
    pub a4: QMatrix,
    pub b: QMatrix,
    pub eta: EtaAxis,
}

/// `B` is `m × m`, `A1` is `m × p` and `A_i` is `m × k_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaDims {
    pub m: usize,
    pub p: usize,
    pub k2: usize,
    pub k3: usize,
    pub k4: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EtaSolution {
    pub x1: QMatrix,
    pub y1: QMatrix,
    pub y2: QMatrix,
    pub y3: QMatrix,
}

impl EtaInstance {
    pub fn dims(&self) -> EtaDims {
        EtaDims { m: self.b.rows(), p: self.a1.cols(), k2: self.a2.cols(), k3: self.a3.cols(), k4: self.a4.cols() }
    }

    pub fn matrices(&self) -> [&QMatrix; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.b]
    }

    /// Checks shapes and that `B` is η-Hermitian within `tol` (max entry norm).
    pub fn validate(&self, tol: f64) -> Result<()> {
        let m = self.b.rows();
        if !self.b.is_square() {
            return Err(QsError::DimensionMismatch(format!("B must be square, got {}x{}", m, self.b.cols())));
        }
        for (name, a) in [("A1", &self.a1), ("A2", &self.a2), ("A3", &self.a3), ("A4", &self.a4)] {
            if a.rows() != m {
                return Err(QsError::DimensionMismatch(format!("{name} has {} rows but B has {m}", a.rows())));
            }
        }
        let deviation = self.b.eta_hermitian_deviation(self.eta)?;
        if deviation > tol {
            return Err(QsError::NotEtaHermitian { eta: self.eta, deviation });
        }
        Ok(())
    }

    /// The unconstrained five-term equation with `B_i = A_i^{η*}`.
    pub fn aux_instance(&self) -> MainInstance {
        let e = self.eta;
        MainInstance {
            a1: self.a1.clone(),
            b1: self.a1.eta_conj_transpose(e),
            a2: self.a2.clone(),
            b2: self.a2.eta_conj_transpose(e),
            a3: self.a3.clone(),
            b3: self.a3.eta_conj_transpose(e),
            a4: self.a4.clone(),
            b4: self.a4.eta_conj_transpose(e),
            b: self.b.clone(),
        }
    }

    /// Left-hand side evaluated at `sol`.
    pub fn apply(&self, sol: &EtaSolution) -> Result<QMatrix> {
        let e = self.eta;
        let ax = self.a1.matmul(&sol.x1)?;
        let mut acc = ax.try_add(&ax.eta_conj_transpose(e))?;
        for (a, y) in [(&self.a2, &sol.y1), (&self.a3, &sol.y2), (&self.a4, &sol.y3)] {
            acc = acc.try_add(&a.matmul(y)?.matmul(&a.eta_conj_transpose(e))?)?;
        }
        Ok(acc)
    }
}

fn symmetrize(y: &QMatrix, eta: EtaAxis) -> QMatrix {
    (y + &y.eta_conj_transpose(eta)).scale(0.5)
}

/// [`solve_eta_with`] with tolerances derived from the input scale.
pub fn solve_eta(inst: &EtaInstance, params: &FreeParameters, branch: Branch) -> Result<(SolveReport, EtaSolution)> {
    let tol = Tolerances::for_inputs(inst.matrices());
    solve_eta_with(inst, params, branch, &tol)
}

/// Solves the auxiliary five-term equation and symmetrizes:
/// `X1 = (X̂1 + X̂2^{η*})/2`, `Y_i = (Ŷ_i + Ŷ_i^{η*})/2`.
///
/// `params` must be shaped for [`EtaInstance::aux_instance`].
pub fn solve_eta_with(
    inst: &EtaInstance,
    params: &FreeParameters,
    branch: Branch,
    tol: &Tolerances,
) -> Result<(SolveReport, EtaSolution)> {
    let rank = check_eta_rank_conditions(inst, tol)?;
    let aux = inst.aux_instance();
    if params.shapes() != super::ParamShapes::for_dims(aux.dims()) {
        return Err(QsError::DimensionMismatch("free parameter shapes do not match the instance".into()));
    }
    let (aux_report, derived) = check_main(&aux, tol)?;
    let mut report = SolveReport::new(rank, aux_report.projector_conditions, aux_report.supplementary);
    if report.verdict == Verdict::Inconsistent {
        return Err(QsError::Inconsistent { failing: report.failing() });
    }
    let hat = construct_solution(&aux, &derived, params, branch);
    let e = inst.eta;
    let sol = EtaSolution {
        x1: (&hat.x1 + &hat.x2.eta_conj_transpose(e)).scale(0.5),
        y1: symmetrize(&hat.y1, e),
        y2: symmetrize(&hat.y2, e),
        y3: symmetrize(&hat.y3, e),
    };
    report.residual = Some((&inst.apply(&sol)? - &inst.b).frobenius_norm());
    Ok((report, sol))
}
