use crate::conditions::{check_four_term_projector_conditions, check_four_term_rank_conditions, Tolerances};
use crate::decomp::{Factored, Tol};
use crate::error::{QsError, Result};
use crate::matrix::QMatrix;

use super::{chain, SolveReport};

/// Coefficients of `A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 = E1` together with
/// the reduced quantities `A = R_{A1}C3`, `B = D3 L_{B1}`, `C = R_{A1}C4`,
/// `D = D4 L_{B1}`, `M = R_A C`, `N = D L_B`, `S = C L_M`.
#[derive(Clone, Copy, Debug)]
pub struct FourTermView<'a> {
    pub a1: &'a Factored,
    pub b1: &'a Factored,
    pub c3: &'a QMatrix,
    pub d3: &'a QMatrix,
    pub c4: &'a QMatrix,
    pub d4: &'a QMatrix,
    pub a: &'a Factored,
    pub b: &'a Factored,
    pub c: &'a Factored,
    pub d: &'a Factored,
    pub m: &'a Factored,
    pub n: &'a Factored,
    pub s: &'a Factored,
}

impl FourTermView<'_> {
    /// `E = R_{A1} E1 L_{B1}`
    pub fn reduced_rhs(&self, e1: &QMatrix) -> QMatrix {
        chain(&[&self.a1.right, e1, &self.b1.left])
    }
}

/// Owned coefficients for a standalone four-term equation.
#[derive(Clone, Debug)]
pub struct FourTermCoeffs {
    pub a1: Factored,
    pub b1: Factored,
    pub c3: QMatrix,
    pub d3: QMatrix,
    pub c4: QMatrix,
    pub d4: QMatrix,
    pub a: Factored,
    pub b: Factored,
    pub c: Factored,
    pub d: Factored,
    pub m: Factored,
    pub n: Factored,
    pub s: Factored,
}

impl FourTermCoeffs {
    pub fn new(a1: &QMatrix, b1: &QMatrix, c3: &QMatrix, d3: &QMatrix, c4: &QMatrix, d4: &QMatrix, tol: Tol) -> Result<Self> {
        let m_rows = a1.rows();
        let n_cols = b1.cols();
        for (name, rows) in [("C3", c3.rows()), ("C4", c4.rows())] {
            if rows != m_rows {
                return Err(QsError::DimensionMismatch(format!("{name} has {rows} rows, A1 has {m_rows}")));
            }
        }
        for (name, cols) in [("D3", d3.cols()), ("D4", d4.cols())] {
            if cols != n_cols {
                return Err(QsError::DimensionMismatch(format!("{name} has {cols} columns, B1 has {n_cols}")));
            }
        }
        let fa1 = Factored::new(a1.clone(), tol)?;
        let fb1 = Factored::new(b1.clone(), tol)?;
        let a = Factored::new(&fa1.right * c3, tol)?;
        let b = Factored::new(d3 * &fb1.left, tol)?;
        let c = Factored::new(&fa1.right * c4, tol)?;
        let d = Factored::new(d4 * &fb1.left, tol)?;
        let m = Factored::new(&a.right * &c.mat, tol)?;
        let n = Factored::new(&d.mat * &b.left, tol)?;
        let s = Factored::new(&c.mat * &m.left, tol)?;
        Ok(FourTermCoeffs {
            a1: fa1,
            b1: fb1,
            c3: c3.clone(),
            d3: d3.clone(),
            c4: c4.clone(),
            d4: d4.clone(),
            a,
            b,
            c,
            d,
            m,
            n,
            s,
        })
    }

    pub fn view(&self) -> FourTermView<'_> {
        FourTermView {
            a1: &self.a1,
            b1: &self.b1,
            c3: &self.c3,
            d3: &self.d3,
            c4: &self.c4,
            d4: &self.d4,
            a: &self.a,
            b: &self.b,
            c: &self.c,
            d: &self.d,
            m: &self.m,
            n: &self.n,
            s: &self.s,
        }
    }
}

/// Free parameters `T1` … `T8` of the four-term general solution.
#[derive(Clone, Debug, PartialEq)]
pub struct FourTermParams {
    pub t: [QMatrix; 8],
}

impl FourTermParams {
    /// Shapes of `T1` … `T8` for the given coefficients.
    pub fn shapes(v: &FourTermView<'_>) -> [(usize, usize); 8] {
        let x3 = (v.c3.cols(), v.d3.rows());
        let x4 = (v.c4.cols(), v.d4.rows());
        let x1 = (v.a1.mat.cols(), v.b1.mat.cols());
        let x2 = (v.a1.mat.rows(), v.b1.mat.rows());
        [x4, x4, x4, x3, x3, x1, x2, x2]
    }

    pub fn zeros(v: &FourTermView<'_>) -> Self {
        FourTermParams { t: FourTermParams::shapes(v).map(|(r, c)| QMatrix::zeros(r, c)) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourTermSolution {
    pub x1: QMatrix,
    pub x2: QMatrix,
    pub x3: QMatrix,
    pub x4: QMatrix,
}

impl FourTermSolution {
    pub fn apply(&self, v: &FourTermView<'_>) -> QMatrix {
        &(&(&(&v.a1.mat * &self.x1) + &(&self.x2 * &v.b1.mat)) + &chain(&[v.c3, &self.x3, v.d3]))
            + &chain(&[v.c4, &self.x4, v.d4])
    }
}

/// Evaluates the closed-form general solution of the four-term equation.
pub fn four_term_formula(v: &FourTermView<'_>, e1: &QMatrix, p: &FourTermParams) -> FourTermSolution {
    let [t1, t2, t3, t4, t5, t6, t7, t8] = &p.t;
    let e = v.reduced_rhs(e1);
    let (a, b, c, d, m, n, s) = (v.a, v.b, v.c, v.d, v.m, v.n, v.s);

    // X3 = A†EB† − A†CM†EB† − A†SC†EN†DB† − A†S T2 R_N D B† + L_A T4 + T5 R_B
    let x3 = &(&(&(&(&chain(&[&a.pinv, &e, &b.pinv]) - &chain(&[&a.pinv, &c.mat, &m.pinv, &e, &b.pinv]))
        - &chain(&[&a.pinv, &s.mat, &c.pinv, &e, &n.pinv, &d.mat, &b.pinv]))
        - &chain(&[&a.pinv, &s.mat, t2, &n.right, &d.mat, &b.pinv]))
        + &(&a.left * t4))
        + &(t5 * &b.right);
    // X4 = M†ED† + S†SC†EN† + L_M L_S T1 + L_M T2 R_N + T3 R_D
    let x4 = &(&(&(&chain(&[&m.pinv, &e, &d.pinv]) + &chain(&[&s.pinv, &s.mat, &c.pinv, &e, &n.pinv]))
        + &chain(&[&m.left, &s.left, t1]))
        + &chain(&[&m.left, t2, &n.right]))
        + &(t3 * &d.right);

    let rest = &(e1 - &chain(&[v.c3, &x3, v.d3])) - &chain(&[v.c4, &x4, v.d4]);
    let x1 = &(&(&v.a1.pinv * &rest) - &chain(&[&v.a1.pinv, t7, &v.b1.mat])) + &(&v.a1.left * t6);
    let x2 = &(&chain(&[&v.a1.right, &rest, &v.b1.pinv]) + &chain(&[&v.a1.mat, &v.a1.pinv, t7])) + &(t8 * &v.b1.right);
    FourTermSolution { x1, x2, x3, x4 }
}

#[derive(Clone, Debug)]
pub struct FourTermOutcome {
    pub report: SolveReport,
    pub solution: FourTermSolution,
}

/// Decides and solves `A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 = E1`.
///
/// Returns `Inconsistent` when the conditions definitely fail; otherwise the
/// solution for the given parameters (zeros when `params` is `None`).
#[allow(clippy::too_many_arguments)]
pub fn solve_four_term(
    a1: &QMatrix,
    b1: &QMatrix,
    c3: &QMatrix,
    d3: &QMatrix,
    c4: &QMatrix,
    d4: &QMatrix,
    e1: &QMatrix,
    params: Option<&FourTermParams>,
    tol: &Tolerances,
) -> Result<FourTermOutcome> {
    if e1.rows() != a1.rows() || e1.cols() != b1.cols() {
        return Err(QsError::DimensionMismatch(format!(
            "E1 is {}x{}, expected {}x{}",
            e1.rows(),
            e1.cols(),
            a1.rows(),
            b1.cols()
        )));
    }
    let coeffs = FourTermCoeffs::new(a1, b1, c3, d3, c4, d4, tol.rank)?;
    let view = coeffs.view();
    let rank = check_four_term_rank_conditions(a1, b1, c3, d3, c4, d4, e1, tol)?;
    let projector = check_four_term_projector_conditions(&view, e1, tol);
    let mut report = SolveReport::new(rank, projector, Vec::new());
    if report.verdict == crate::conditions::Verdict::Inconsistent {
        return Err(QsError::Inconsistent { failing: report.failing() });
    }
    let zeros;
    let params = match params {
        Some(p) => {
            let expected = FourTermParams::shapes(&view);
            if let Some((i, _)) = p.t.iter().zip(expected).enumerate().find(|(_, (t, s))| t.shape() != *s) {
                return Err(QsError::DimensionMismatch(format!(
                    "T{} must be {}x{}",
                    i + 1,
                    expected[i].0,
                    expected[i].1
                )));
            }
            p
        }
        None => {
            zeros = FourTermParams::zeros(&view);
            &zeros
        }
    };
    let solution = four_term_formula(&view, e1, params);
    report.residual = Some((&solution.apply(&view) - e1).frobenius_norm());
    Ok(FourTermOutcome { report, solution })
}
