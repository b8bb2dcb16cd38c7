use crate::conditions::{
    check_projector_conditions, check_rank_conditions, check_supplementary_conditions, Tolerances, Verdict,
};
use crate::decomp::{Factored, Tol};
use crate::error::{QsError, Result};
use crate::matrix::QMatrix;

use super::axyb::axyb_formula;
use super::four_term::{four_term_formula, FourTermParams, FourTermView};
use super::pair::pair_formula;
use super::{chain, Branch, FreeParameters, MainInstance, MainSolution, SolveReport};

/// Every intermediate quantity of the five-term reduction. Field names follow
/// the usual notation with lower case (`a11` is `A11`, `c1` is `C1`, ...).
///
/// `C11` here is the block row `(L_{C2}, L_{C4})`; it is unrelated to the
/// `C11` of the pair system.
#[derive(Clone, Debug)]
pub struct MainDerived {
    pub tol: Tolerances,
    pub a1: Factored,
    pub b1: Factored,
    /// `m × 0` and `0 × n` placeholders used when the `Y` layer is solved as a
    /// four-term equation with no `X` terms.
    pub no_a: Factored,
    pub no_b: Factored,

    pub a11: Factored,
    pub a22: Factored,
    pub a33: QMatrix,
    pub b11: Factored,
    pub b22: Factored,
    pub b33: QMatrix,
    pub m1: Factored,
    pub n1: Factored,
    pub s1: Factored,
    pub t1: QMatrix,

    pub c: QMatrix,
    pub c1: Factored,
    pub c2: Factored,
    pub c3: Factored,
    pub c4: Factored,
    pub d: QMatrix,
    pub d1: Factored,
    pub d2: Factored,
    pub d3: Factored,
    pub d4: Factored,
    pub e1: QMatrix,
    pub e2: QMatrix,
    pub e3: QMatrix,
    pub e4: QMatrix,

    pub c11: Factored,
    pub d11: Factored,
    pub c22: QMatrix,
    pub d22: QMatrix,
    pub c33: QMatrix,
    pub d33: QMatrix,
    pub e11: Factored,
    pub e22: Factored,
    pub e33: Factored,
    pub e44: Factored,
    pub m: Factored,
    pub n: Factored,
    pub s: Factored,
    pub f: QMatrix,
    pub e: QMatrix,

    pub f11: QMatrix,
    pub g1: QMatrix,
    pub f22: QMatrix,
    pub g2: QMatrix,
    pub f1: QMatrix,
    pub f2: QMatrix,
}

impl MainDerived {
    /// Coefficients of `A11 Y1 B11 + A22 Y2 B22 = T`.
    pub fn y_layer(&self) -> FourTermView<'_> {
        FourTermView {
            a1: &self.no_a,
            b1: &self.no_b,
            c3: &self.a11.mat,
            d3: &self.b11.mat,
            c4: &self.a22.mat,
            d4: &self.b22.mat,
            a: &self.a11,
            b: &self.b11,
            c: &self.a22,
            d: &self.b22,
            m: &self.m1,
            n: &self.n1,
            s: &self.s1,
        }
    }

    /// Coefficients of `C11 [V1; W1] + [V2, W2] D11 + C22 V3 D22 + C33 W3 D33 = F`.
    pub fn vw_layer(&self) -> FourTermView<'_> {
        FourTermView {
            a1: &self.c11,
            b1: &self.d11,
            c3: &self.c22,
            d3: &self.d22,
            c4: &self.c33,
            d4: &self.d33,
            a: &self.e11,
            b: &self.e33,
            c: &self.e22,
            d: &self.e44,
            m: &self.m,
            n: &self.n,
            s: &self.s,
        }
    }
}

/// Computes every derived quantity in dependency order.
pub fn derive_main_quantities(inst: &MainInstance, tol: &Tolerances) -> Result<MainDerived> {
    inst.validate()?;
    let t: Tol = tol.rank;
    let fac = |m: QMatrix| Factored::new(m, t);
    let (m_rows, n_cols) = inst.b.shape();

    let a1 = fac(inst.a1.clone())?;
    let b1 = fac(inst.b1.clone())?;
    let no_a = fac(QMatrix::zeros(m_rows, 0))?;
    let no_b = fac(QMatrix::zeros(0, n_cols))?;

    let a11 = fac(&a1.right * &inst.a2)?;
    let a22 = fac(&a1.right * &inst.a3)?;
    let a33 = &a1.right * &inst.a4;
    let b11 = fac(&inst.b2 * &b1.left)?;
    let b22 = fac(&inst.b3 * &b1.left)?;
    let b33 = &inst.b4 * &b1.left;
    let n1 = fac(&b22.mat * &b11.left)?;
    let m1 = fac(&a11.right * &a22.mat)?;
    let s1 = fac(&a22.mat * &m1.left)?;
    let t1 = chain(&[&a1.right, &inst.b, &b1.left]);

    let c = &m1.right * &a11.right;
    let c1 = fac(&c * &a33)?;
    let c2 = fac(&a11.right * &a33)?;
    let c3 = fac(&a22.right * &a33)?;
    let c4 = fac(a33.clone())?;
    let d = &b11.left * &n1.left;
    let d1 = fac(b33.clone())?;
    let d2 = fac(&b33 * &b22.left)?;
    let d3 = fac(&b33 * &b11.left)?;
    let d4 = fac(&b33 * &d)?;
    let e1 = &c * &t1;
    let e2 = chain(&[&a11.right, &t1, &b22.left]);
    let e3 = chain(&[&a22.right, &t1, &b11.left]);
    let e4 = &t1 * &d;

    let c11 = fac(QMatrix::hcat(&c2.left, &c4.left)?)?;
    let d11 = fac(QMatrix::vcat(&d1.right, &d3.right)?)?;
    let c22 = c1.left.clone();
    let d22 = d2.right.clone();
    let c33 = c3.left.clone();
    let d33 = d4.right.clone();
    let e11 = fac(&c11.right * &c22)?;
    let e22 = fac(&c11.right * &c33)?;
    let e33 = fac(&d22 * &d11.left)?;
    let e44 = fac(&d33 * &d11.left)?;
    let m = fac(&e11.right * &e22.mat)?;
    let n = fac(&e44.mat * &e33.left)?;
    let s = fac(&e22.mat * &m.left)?;

    let f11 = &c2.mat * &c1.left;
    let g1 = &e2 - &chain(&[&c2.mat, &c1.pinv, &e1, &d1.pinv, &d2.mat]);
    let f22 = &c4.mat * &c3.left;
    let g2 = &e4 - &chain(&[&c4.mat, &c3.pinv, &e3, &d3.pinv, &d4.mat]);
    let f1 = &chain(&[&c1.pinv, &e1, &d1.pinv]) + &chain(&[&c1.left, &c2.pinv, &e2, &d2.pinv]);
    let f2 = &chain(&[&c3.pinv, &e3, &d3.pinv]) + &chain(&[&c3.left, &c4.pinv, &e4, &d4.pinv]);
    let f = &f2 - &f1;
    let e = chain(&[&c11.right, &f, &d11.left]);

    Ok(MainDerived {
        tol: *tol,
        a1,
        b1,
        no_a,
        no_b,
        a11,
        a22,
        a33,
        b11,
        b22,
        b33,
        m1,
        n1,
        s1,
        t1,
        c,
        c1,
        c2,
        c3,
        c4,
        d,
        d1,
        d2,
        d3,
        d4,
        e1,
        e2,
        e3,
        e4,
        c11,
        d11,
        c22,
        d22,
        c33,
        d33,
        e11,
        e22,
        e33,
        e44,
        m,
        n,
        s,
        f,
        e,
        f11,
        g1,
        f22,
        g2,
        f1,
        f2,
    })
}

/// Runs both condition families on an instance.
pub fn check_main(inst: &MainInstance, tol: &Tolerances) -> Result<(SolveReport, MainDerived)> {
    let rank = check_rank_conditions(inst, tol)?;
    let derived = derive_main_quantities(inst, tol)?;
    let projector = check_projector_conditions(&derived, tol);
    let supplementary = check_supplementary_conditions(&derived, tol)?;
    Ok((SolveReport::new(rank, projector, supplementary), derived))
}

fn check_param_shapes(inst: &MainInstance, params: &FreeParameters) -> Result<()> {
    let expected = super::ParamShapes::for_dims(inst.dims());
    if params.shapes() != expected {
        return Err(QsError::DimensionMismatch(format!(
            "free parameter shapes {:?} do not match the instance, expected {:?}",
            params.shapes(),
            expected
        )));
    }
    Ok(())
}

pub(crate) fn construct_solution(
    inst: &MainInstance,
    d: &MainDerived,
    params: &FreeParameters,
    branch: Branch,
) -> MainSolution {
    let (k4, l4) = (inst.a4.cols(), inst.b4.rows());

    // V1..V3, W1..W3 from the reduced four-term equation in F
    let vw = d.vw_layer();
    let t = FourTermParams {
        t: [
            params.u41.clone(),
            params.u31.clone(),
            -&params.u42,
            params.u32.clone(),
            params.u33.clone(),
            params.u12.clone(),
            params.u11.clone(),
            params.u21.clone(),
        ],
    };
    let sol = four_term_formula(&vw, &d.f, &t);
    let split = |m: &QMatrix, r0, c0| m.submatrix(r0, c0, k4, l4).expect("V/W block within bounds");
    let (v1, w1) = (split(&sol.x1, 0, 0), split(&sol.x1, k4, 0));
    let (v2, w2) = (split(&sol.x2, 0, 0), split(&sol.x2, 0, l4));
    let (v3, w3) = (sol.x3, sol.x4);

    let y3 = match branch {
        Branch::F1 => pair_formula(&d.c1, &d.d1, &d.e1, &d.c2, &d.d2, &d.e2, [&v1, &v2, &v3]),
        Branch::F2 => pair_formula(&d.c3, &d.d3, &d.e3, &d.c4, &d.d4, &d.e4, [&-&w1, &-&w2, &-&w3]),
    };

    // Y1, Y2 from A11 Y1 B11 + A22 Y2 B22 = T1 − A33 Y3 B33
    let t_rhs = &d.t1 - &chain(&[&d.a33, &y3, &d.b33]);
    let yl = d.y_layer();
    let mut yp = FourTermParams::zeros(&yl);
    yp.t[0] = params.u[6].clone();
    yp.t[1] = params.u[3].clone();
    yp.t[2] = params.u[7].clone();
    yp.t[3] = params.u[4].clone();
    yp.t[4] = params.u[5].clone();
    let ys = four_term_formula(&yl, &t_rhs, &yp);
    let (y1, y2) = (ys.x3, ys.x4);

    let rhs = &(&(&inst.b - &chain(&[&inst.a2, &y1, &inst.b2])) - &chain(&[&inst.a3, &y2, &inst.b3]))
        - &chain(&[&inst.a4, &y3, &inst.b4]);
    let (x1, x2) = axyb_formula(&d.a1, &d.b1, &rhs, &params.u[0], &params.u[1], &params.u[2]);
    MainSolution { x1, x2, y1, y2, y3, branch }
}

/// Decides consistency and builds the member of the general solution selected
/// by `params` and `branch`, with tolerances derived from the input scale.
pub fn solve_main(inst: &MainInstance, params: &FreeParameters, branch: Branch) -> Result<(SolveReport, MainSolution)> {
    let tol = Tolerances::for_inputs(inst.matrices());
    solve_main_with(inst, params, branch, &tol)
}

/// [`solve_main`] with explicit tolerances.
///
/// Fails with `Inconsistent` only when the conditions definitely fail; an
/// indeterminate verdict still yields a candidate solution whose residual is
/// recorded in the report.
pub fn solve_main_with(
    inst: &MainInstance,
    params: &FreeParameters,
    branch: Branch,
    tol: &Tolerances,
) -> Result<(SolveReport, MainSolution)> {
    inst.validate()?;
    check_param_shapes(inst, params)?;
    let (mut report, derived) = check_main(inst, tol)?;
    if report.verdict == Verdict::Inconsistent {
        return Err(QsError::Inconsistent { failing: report.failing() });
    }
    let sol = construct_solution(inst, &derived, params, branch);
    report.residual = Some((&inst.apply(&sol)? - &inst.b).frobenius_norm());
    Ok((report, sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;
    use crate::solvers::{MainDims, ParamMode};

    #[test]
    fn zero_instance_is_consistent_with_zero_residual() {
        let inst = MainInstance::zeros(MainDims::square(2));
        let params = FreeParameters::for_instance(&inst, ParamMode::Random { seed: 3 });
        for branch in [Branch::F1, Branch::F2] {
            let (report, _) = solve_main(&inst, &params, branch).unwrap();
            assert_eq!(report.verdict, Verdict::Consistent);
            assert!(report.residual.unwrap() <= 1e-12);
        }
    }

    #[test]
    fn zero_coefficients_nonzero_rhs_is_inconsistent() {
        let mut inst = MainInstance::zeros(MainDims::square(2));
        inst.b = QMatrix::identity(2);
        let params = FreeParameters::for_instance(&inst, ParamMode::Zero);
        let err = solve_main(&inst, &params, Branch::F1).unwrap_err();
        match err {
            QsError::Inconsistent { failing } => assert!(failing.iter().any(|r| r.name == "RC1E1")),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn derived_a11_of_example() {
        let q = |rows: &[&[Q]]| QMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        let z = Q::ZERO;
        let mut inst = MainInstance::zeros(MainDims::square(2));
        inst.a1 = q(&[&[Q::I, z], &[z, z]]);
        inst.a2 = q(&[&[z, z], &[Q::I, z]]);
        let d = derive_main_quantities(&inst, &Tolerances::for_inputs(inst.matrices())).unwrap();
        assert_eq!(d.a1.right, q(&[&[z, z], &[z, Q::ONE]]));
        assert!((&d.a11.mat - &q(&[&[z, z], &[Q::I, z]])).max_entry_norm() <= 1e-15);
    }
}
