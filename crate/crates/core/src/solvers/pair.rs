use crate::conditions::{check_pair_conditions, ConditionForm, Tolerances, Verdict};
use crate::decomp::Factored;
use crate::error::{QsError, Result};
use crate::matrix::QMatrix;

use super::chain;

/// The system `A11 X B11 = C1`, `A22 X B22 = C2` with a shared unknown `X`.
///
/// The closed form requires `A11 L_{A22} = 0` and `R_{B11} B22 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSystem {
    pub a11: QMatrix,
    pub b11: QMatrix,
    pub c1: QMatrix,
    pub a22: QMatrix,
    pub b22: QMatrix,
    pub c2: QMatrix,
}

#[derive(Clone, Debug)]
pub struct PairFactors {
    pub a11: Factored,
    pub b11: Factored,
    pub a22: Factored,
    pub b22: Factored,
}

impl PairSystem {
    /// Shape of the unknown `X`.
    pub fn unknown_shape(&self) -> (usize, usize) {
        (self.a11.cols(), self.b11.rows())
    }

    pub fn validate(&self) -> Result<()> {
        let (r, s) = self.unknown_shape();
        let checks = [
            ("A22 columns", self.a22.cols(), r),
            ("B22 rows", self.b22.rows(), s),
            ("C1 rows", self.c1.rows(), self.a11.rows()),
            ("C1 columns", self.c1.cols(), self.b11.cols()),
            ("C2 rows", self.c2.rows(), self.a22.rows()),
            ("C2 columns", self.c2.cols(), self.b22.cols()),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(QsError::DimensionMismatch(format!("{what}: expected {want}, got {got}")));
            }
        }
        Ok(())
    }

    pub fn factor(&self, tol: &Tolerances) -> Result<PairFactors> {
        Ok(PairFactors {
            a11: Factored::new(self.a11.clone(), tol.rank)?,
            b11: Factored::new(self.b11.clone(), tol.rank)?,
            a22: Factored::new(self.a22.clone(), tol.rank)?,
            b22: Factored::new(self.b22.clone(), tol.rank)?,
        })
    }
}

/// `X = A11†C1B11† + L_{A11}A22†C2B22† + L_{A22}V1 + V2R_{B11} + L_{A11}V3R_{B22}`
pub fn pair_formula(
    a11: &Factored,
    b11: &Factored,
    c1: &QMatrix,
    a22: &Factored,
    b22: &Factored,
    c2: &QMatrix,
    v: [&QMatrix; 3],
) -> QMatrix {
    let base = &chain(&[&a11.pinv, c1, &b11.pinv]) + &chain(&[&a11.left, &a22.pinv, c2, &b22.pinv]);
    &(&(&base + &(&a22.left * v[0])) + &(v[1] * &b11.right)) + &chain(&[&a11.left, v[2], &b22.right])
}

/// Decides the pair system with all three equivalent condition sets and, when
/// they agree on consistency, returns the solution for `V1, V2, V3`
/// (zeros when `None`).
pub fn solve_pair_system(
    sys: &PairSystem,
    v: Option<[&QMatrix; 3]>,
    tol: &Tolerances,
) -> Result<(Vec<crate::conditions::ConditionReport>, QMatrix)> {
    let reports = check_pair_conditions(sys, tol)?;
    let by_form = |form| reports.iter().filter(|r| r.form == form).cloned().collect::<Vec<_>>();
    let verdict = Verdict::of(&by_form(ConditionForm::Rank))
        .combine(Verdict::of(&by_form(ConditionForm::Projector)))
        .combine(Verdict::of(&by_form(ConditionForm::Equation)));
    if verdict == Verdict::Inconsistent {
        return Err(QsError::Inconsistent { failing: reports.into_iter().filter(|r| !r.holds).collect() });
    }
    let f = sys.factor(tol)?;
    let (r, s) = sys.unknown_shape();
    let zero = QMatrix::zeros(r, s);
    let v = v.unwrap_or([&zero, &zero, &zero]);
    for (i, vi) in v.iter().enumerate() {
        if vi.shape() != (r, s) {
            return Err(QsError::DimensionMismatch(format!("V{} must be {r}x{s}", i + 1)));
        }
    }
    let x = pair_formula(&f.a11, &f.b11, &sys.c1, &f.a22, &f.b22, &sys.c2, v);
    Ok((reports, x))
}
