//! Solvability tests in rank-equality form and projector-equation form.

use std::fmt;

use crate::decomp::{rank_info, Factored, Tol};
use crate::error::{QsError, Result};
use crate::matrix::{Block, QMatrix};
use crate::solvers::{EtaInstance, MainDerived, MainInstance, PairSystem};

/// Relative singular value cutoff used by every condition and solver.
pub const RANK_RTOL: f64 = 1e-9;
/// Relative residual bound for projector-form conditions.
pub const RESIDUAL_RTOL: f64 = 1e-8;

/// Tolerances derived from the size of the input data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rank: Tol,
    /// Absolute bound on the max entry norm of a product that must vanish.
    pub residual: f64,
    /// `1 + max entry norm` over the inputs.
    pub scale: f64,
}

impl Tolerances {
    pub fn for_scale(scale: f64) -> Self {
        Tolerances { rank: Tol::Scaled { rtol: RANK_RTOL, scale }, residual: RESIDUAL_RTOL * scale, scale }
    }

    pub fn for_inputs<'a>(mats: impl IntoIterator<Item = &'a QMatrix>) -> Self {
        let max = mats.into_iter().map(QMatrix::max_entry_norm).fold(0.0, f64::max);
        Tolerances::for_scale(1.0 + max)
    }

    /// Replaces the projector-form residual bound.
    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = residual;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionForm {
    /// `lhs_rank == rhs_rank`
    Rank,
    /// a product that must vanish
    Projector,
    /// an identity `lhs = rhs`, measured by the residual of the difference
    Equation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub name: String,
    pub form: ConditionForm,
    pub lhs_rank: Option<usize>,
    pub rhs_rank: Option<usize>,
    /// Max entry norm of the product (projector and equation forms).
    pub residual: Option<f64>,
    pub holds: bool,
    /// The decision sits within a factor 10 of its tolerance.
    pub indeterminate: bool,
}

impl ConditionReport {
    fn rank(name: &str, lhs: usize, rhs: usize, indeterminate: bool) -> Self {
        ConditionReport {
            name: name.to_string(),
            form: ConditionForm::Rank,
            lhs_rank: Some(lhs),
            rhs_rank: Some(rhs),
            residual: None,
            holds: lhs == rhs,
            indeterminate,
        }
    }

    fn vanishing(name: &str, form: ConditionForm, residual: f64, tol: f64) -> Self {
        ConditionReport {
            name: name.to_string(),
            form,
            lhs_rank: None,
            rhs_rank: None,
            residual: Some(residual),
            holds: residual <= tol,
            indeterminate: residual > tol / 10.0 && residual <= tol * 10.0,
        }
    }

    /// Failed and not merely borderline.
    pub fn definitely_fails(&self) -> bool {
        !self.holds && !self.indeterminate
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.holds, self.indeterminate) {
            (_, true) => "indeterminate",
            (true, false) => "holds",
            (false, false) => "fails",
        };
        match (self.lhs_rank, self.rhs_rank, self.residual) {
            (Some(l), Some(r), _) => write!(f, "{:<12} {:>5} {:>5}  {:<13}", self.name, l, r, status),
            (_, _, Some(res)) => write!(f, "{:<12} {:>5} {:>5}  {:<13} {:.3e}", self.name, "-", "-", status, res),
            _ => write!(f, "{:<12} {status}", self.name),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Indeterminate,
}

impl Verdict {
    /// Verdict of a single family of reports.
    pub fn of(reports: &[ConditionReport]) -> Verdict {
        if reports.iter().any(ConditionReport::definitely_fails) {
            Verdict::Inconsistent
        } else if reports.iter().any(|r| r.indeterminate) {
            Verdict::Indeterminate
        } else {
            Verdict::Consistent
        }
    }

    /// Combines two independent families: a definite answer wins over an
    /// indeterminate one, and two definite answers that disagree are
    /// indeterminate.
    pub fn combine(self, other: Verdict) -> Verdict {
        match (self, other) {
            (a, b) if a == b => a,
            (Verdict::Indeterminate, b) => b,
            (a, Verdict::Indeterminate) => a,
            _ => Verdict::Indeterminate,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Consistent => 0,
            Verdict::Inconsistent => 2,
            Verdict::Indeterminate => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

fn rank_sum(mats: &[&QMatrix], tol: Tol) -> Result<(usize, bool)> {
    let mut total = 0;
    let mut near = false;
    for m in mats {
        let info = rank_info(m, tol)?;
        total += info.rank;
        near |= info.near_cutoff;
    }
    Ok((total, near))
}

fn rank_report(name: &str, lhs: &[&QMatrix], rhs: &[&QMatrix], tol: &Tolerances) -> Result<ConditionReport> {
    let (l, near_l) = rank_sum(lhs, tol.rank)?;
    let (r, near_r) = rank_sum(rhs, tol.rank)?;
    Ok(ConditionReport::rank(name, l, r, near_l || near_r))
}

fn projector_report(name: &str, product: &QMatrix, tol: &Tolerances) -> ConditionReport {
    ConditionReport::vanishing(name, ConditionForm::Projector, product.max_entry_norm(), tol.residual)
}

fn equation_report(name: &str, lhs: &QMatrix, rhs: &QMatrix, tol: &Tolerances) -> ConditionReport {
    ConditionReport::vanishing(name, ConditionForm::Equation, (lhs - rhs).max_entry_norm(), tol.residual)
}

use Block::{Mat as M, Zero as Z};

fn hrow(mats: &[&QMatrix]) -> Result<QMatrix> {
    QMatrix::block(&[mats.iter().map(|m| M(m)).collect()])
}

fn vcol(mats: &[&QMatrix]) -> Result<QMatrix> {
    QMatrix::block(&mats.iter().map(|m| vec![M(m)]).collect::<Vec<_>>())
}

/// `[[E, row...], [c_0, 0...], [c_1, 0...], ...]`: the bordered layout shared by
/// most rank conditions.
fn bordered(e: &QMatrix, row: &[&QMatrix], col: &[&QMatrix]) -> Result<QMatrix> {
    let mut grid = vec![std::iter::once(M(e)).chain(row.iter().map(|m| M(m))).collect::<Vec<_>>()];
    for c in col {
        grid.push(std::iter::once(M(c)).chain(row.iter().map(|_| Z)).collect());
    }
    QMatrix::block(&grid)
}

/// Both sides of the Marsaglia–Styan rank identity
/// `r[[A, B L_D], [R_E C, 0]] = r[[A, B, 0], [C, 0, E], [0, D, 0]] − r(D) − r(E)`.
pub fn ms_rank_identity(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    e: &QMatrix,
    tol: &Tolerances,
) -> Result<(usize, usize)> {
    let fd = Factored::new(d.clone(), tol.rank)?;
    let fe = Factored::new(e.clone(), tol.rank)?;
    let bl = b.matmul(&fd.left)?;
    let rc = fe.right.matmul(c)?;
    let lhs = QMatrix::block(&[vec![M(a), M(&bl)], vec![M(&rc), Z]])?;
    let rhs = QMatrix::block(&[vec![M(a), M(b), Z], vec![M(c), Z, M(e)], vec![Z, M(d), Z]])?;
    let (l, _) = rank_sum(&[&lhs], tol.rank)?;
    let (r, _) = rank_sum(&[&rhs], tol.rank)?;
    Ok((l, r - fd.rank - fe.rank))
}

/// The nine rank equalities of the five-term equation, in order `2a` … `2i`.
pub fn check_rank_conditions(inst: &MainInstance, tol: &Tolerances) -> Result<Vec<ConditionReport>> {
    inst.validate()?;
    let MainInstance { a1, b1, a2, b2, a3, b3, a4, b4, b } = inst;
    let neg_b = -b;
    let big = QMatrix::block(&[
        vec![M(b), M(a2), M(a1), Z, Z, Z, M(a4)],
        vec![M(b3), Z, Z, Z, Z, Z, Z],
        vec![M(b1), Z, Z, Z, Z, Z, Z],
        vec![Z, Z, Z, M(&neg_b), M(a3), M(a1), M(a4)],
        vec![Z, Z, Z, M(b2), Z, Z, Z],
        vec![Z, Z, Z, M(b1), Z, Z, Z],
        vec![M(b4), Z, Z, M(b4), Z, Z, Z],
    ])?;
    let big_b = QMatrix::block(&[
        vec![M(b3), Z],
        vec![M(b1), Z],
        vec![Z, M(b2)],
        vec![Z, M(b1)],
        vec![M(b4), M(b4)],
    ])?;
    let big_a = QMatrix::block(&[vec![M(a2), M(a1), Z, Z, M(a4)], vec![Z, Z, M(a3), M(a1), M(a4)]])?;

    Ok(vec![
        rank_report("2a", &[&bordered(b, &[a2, a3, a4, a1], &[b1])?], &[b1, &hrow(&[a2, a3, a4, a1])?], tol)?,
        rank_report("2b", &[&bordered(b, &[a2, a4, a1], &[b3, b1])?], &[&hrow(&[a2, a4, a1])?, &vcol(&[b3, b1])?], tol)?,
        rank_report("2c", &[&bordered(b, &[a3, a4, a1], &[b2, b1])?], &[&hrow(&[a3, a4, a1])?, &vcol(&[b2, b1])?], tol)?,
        rank_report("2d", &[&bordered(b, &[a4, a1], &[b2, b3, b1])?], &[&vcol(&[b2, b3, b1])?, &hrow(&[a4, a1])?], tol)?,
        rank_report("2e", &[&bordered(b, &[a2, a3, a1], &[b4, b1])?], &[&hrow(&[a2, a3, a1])?, &vcol(&[b4, b1])?], tol)?,
        rank_report("2f", &[&bordered(b, &[a2, a1], &[b3, b4, b1])?], &[&vcol(&[b3, b4, b1])?, &hrow(&[a2, a1])?], tol)?,
        rank_report("2g", &[&bordered(b, &[a3, a1], &[b2, b4, b1])?], &[&vcol(&[b2, b4, b1])?, &hrow(&[a3, a1])?], tol)?,
        rank_report("2h", &[&bordered(b, &[a1], &[b2, b3, b4, b1])?], &[&vcol(&[b2, b3, b4, b1])?, a1], tol)?,
        rank_report("2i", &[&big], &[&big_b, &big_a], tol)?,
    ])
}

/// `R_{C_i} E_i = 0`, `E_i L_{D_i} = 0` for `i = 1..4` and `R_{E11} E L_{E44} = 0`.
pub fn check_projector_conditions(d: &MainDerived, tol: &Tolerances) -> Vec<ConditionReport> {
    let mut out = Vec::with_capacity(9);
    for (i, (c, dd, e)) in [(&d.c1, &d.d1, &d.e1), (&d.c2, &d.d2, &d.e2), (&d.c3, &d.d3, &d.e3), (&d.c4, &d.d4, &d.e4)]
        .into_iter()
        .enumerate()
    {
        let i = i + 1;
        out.push(projector_report(&format!("RC{i}E{i}"), &(&c.right * e), tol));
        out.push(projector_report(&format!("E{i}LD{i}"), &(e * &dd.left), tol));
    }
    out.push(projector_report("RE11ELE44", &(&(&d.e11.right * &d.e) * &d.e44.left), tol));
    out
}

/// Further vanishing products that hold on every consistent instance:
/// `R_{F11} G1`, `R_{F22} G2`, and the remaining three projector conditions of
/// the reduced four-term equation in `V`, `W`.
pub fn check_supplementary_conditions(d: &MainDerived, tol: &Tolerances) -> Result<Vec<ConditionReport>> {
    let f11 = Factored::new(d.f11.clone(), tol.rank)?;
    let f22 = Factored::new(d.f22.clone(), tol.rank)?;
    Ok(vec![
        projector_report("RF11G1", &(&f11.right * &d.g1), tol),
        projector_report("RF22G2", &(&f22.right * &d.g2), tol),
        projector_report("RMRE11E", &(&(&d.m.right * &d.e11.right) * &d.e), tol),
        projector_report("ELE33LN", &(&(&d.e * &d.e33.left) * &d.n.left), tol),
        projector_report("RE22ELE33", &(&(&d.e22.right * &d.e) * &d.e33.left), tol),
    ])
}

/// The five rank equalities of the η-Hermitian equation.
pub fn check_eta_rank_conditions(inst: &EtaInstance, tol: &Tolerances) -> Result<Vec<ConditionReport>> {
    inst.validate(tol.residual)?;
    let EtaInstance { a1, a2, a3, a4, b, eta } = inst;
    let [s1, s2, s3, s4] = [a1, a2, a3, a4].map(|a| a.eta_conj_transpose(*eta));
    let neg_b = -b;
    let big = QMatrix::block(&[
        vec![M(b), Z, M(a2), Z, M(a4), M(a1), Z],
        vec![Z, M(&neg_b), Z, M(a3), M(a4), Z, M(a1)],
        vec![M(&s3), Z, Z, Z, Z, Z, Z],
        vec![Z, M(&s2), Z, Z, Z, Z, Z],
        vec![M(&s4), M(&s4), Z, Z, Z, Z, Z],
        vec![M(&s1), Z, Z, Z, Z, Z, Z],
        vec![Z, M(&s1), Z, Z, Z, Z, Z],
    ])?;
    let rhs_big = QMatrix::block(&[vec![M(a2), Z, M(a4), M(a1), Z], vec![Z, M(a3), M(a4), Z, M(a1)]])?;
    Ok(vec![
        rank_report("eta1", &[&bordered(b, &[a2, a3, a4, a1], &[&s1])?], &[a1, &hrow(&[a2, a3, a4, a1])?], tol)?,
        rank_report("eta2", &[&bordered(b, &[a2, a3, a1], &[&s4, &s1])?], &[&hrow(&[a2, a3, a1])?, &hrow(&[a4, a1])?], tol)?,
        rank_report("eta3", &[&bordered(b, &[a2, a4, a1], &[&s3, &s1])?], &[&hrow(&[a2, a4, a1])?, &hrow(&[a3, a1])?], tol)?,
        rank_report("eta4", &[&bordered(b, &[a3, a4, a1], &[&s2, &s1])?], &[&hrow(&[a3, a4, a1])?, &hrow(&[a2, a1])?], tol)?,
        rank_report("eta5", &[&big], &[&rhs_big, &rhs_big], tol)?,
    ])
}

/// Rank equalities of `A11 Y1 B11 + A22 Y2 B22 + A33 Y3 B33 = T1`.
#[allow(clippy::too_many_arguments)]
pub fn check_three_term_rank_conditions(
    a11: &QMatrix,
    b11: &QMatrix,
    a22: &QMatrix,
    b22: &QMatrix,
    a33: &QMatrix,
    b33: &QMatrix,
    t1: &QMatrix,
    tol: &Tolerances,
) -> Result<Vec<ConditionReport>> {
    let neg_t = -t1;
    let big = QMatrix::block(&[
        vec![M(t1), Z, M(a11), Z, M(a33)],
        vec![Z, M(&neg_t), Z, M(a22), M(a33)],
        vec![M(b22), Z, Z, Z, Z],
        vec![Z, M(b11), Z, Z, Z],
        vec![M(b33), M(b33), Z, Z, Z],
    ])?;
    let big_b = QMatrix::block(&[vec![M(b22), Z], vec![Z, M(b11)], vec![M(b33), M(b33)]])?;
    let big_a = QMatrix::block(&[vec![M(a11), Z, M(a33)], vec![Z, M(a22), M(a33)]])?;
    Ok(vec![
        rank_report("t1", &[&hrow(&[t1, a11, a22, a33])?], &[&hrow(&[a11, a22, a33])?], tol)?,
        rank_report("t2", &[&vcol(&[t1, b11, b22, b33])?], &[&vcol(&[b11, b22, b33])?], tol)?,
        rank_report("t3", &[&bordered(t1, &[a11, a22], &[b33])?], &[&hrow(&[a11, a22])?, b33], tol)?,
        rank_report("t4", &[&bordered(t1, &[a11, a33], &[b22])?], &[&hrow(&[a11, a33])?, b22], tol)?,
        rank_report("t5", &[&bordered(t1, &[a33, a22], &[b11])?], &[&hrow(&[a33, a22])?, b11], tol)?,
        rank_report("t6", &[&bordered(t1, &[a33], &[b11, b22])?], &[&vcol(&[b11, b22])?, a33], tol)?,
        rank_report("t7", &[&big], &[&big_b, &big_a], tol)?,
        rank_report("t8", &[&bordered(t1, &[a22], &[b11, b33])?], &[&vcol(&[b11, b33])?, a22], tol)?,
        rank_report("t9", &[&bordered(t1, &[a11], &[b33, b22])?], &[&vcol(&[b33, b22])?, a11], tol)?,
    ])
}

/// Rank equalities of `A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 = E1`.
#[allow(clippy::too_many_arguments)]
pub fn check_four_term_rank_conditions(
    a1: &QMatrix,
    b1: &QMatrix,
    c3: &QMatrix,
    d3: &QMatrix,
    c4: &QMatrix,
    d4: &QMatrix,
    e1: &QMatrix,
    tol: &Tolerances,
) -> Result<Vec<ConditionReport>> {
    Ok(vec![
        rank_report("r1", &[&bordered(e1, &[c4, c3, a1], &[b1])?], &[b1, &hrow(&[c4, c3, a1])?], tol)?,
        rank_report("r2", &[&bordered(e1, &[a1], &[d3, d4, b1])?], &[&vcol(&[d3, d4, b1])?, a1], tol)?,
        rank_report("r3", &[&bordered(e1, &[c3, a1], &[d4, b1])?], &[&hrow(&[a1, c3])?, &vcol(&[d4, b1])?], tol)?,
        rank_report("r4", &[&bordered(e1, &[c4, a1], &[d3, b1])?], &[&hrow(&[a1, c4])?, &vcol(&[d3, b1])?], tol)?,
    ])
}

/// Projector form of the four-term conditions:
/// `R_M R_A E`, `E L_B L_N`, `R_A E L_D` and `R_C E L_B`.
pub fn check_four_term_projector_conditions(
    coeffs: &crate::solvers::FourTermView<'_>,
    e1: &QMatrix,
    tol: &Tolerances,
) -> Vec<ConditionReport> {
    let e = coeffs.reduced_rhs(e1);
    vec![
        projector_report("RMRAE", &(&(&coeffs.m.right * &coeffs.a.right) * &e), tol),
        projector_report("ELBLN", &(&(&e * &coeffs.b.left) * &coeffs.n.left), tol),
        projector_report("RAELD", &(&(&coeffs.a.right * &e) * &coeffs.d.left), tol),
        projector_report("RCELB", &(&(&coeffs.c.right * &e) * &coeffs.b.left), tol),
    ]
}

/// Checks the two structural hypotheses `A11 L_{A22} = 0` and `R_{B11} B22 = 0`
/// of the constrained pair system.
pub fn check_pair_side_conditions(
    a11: &Factored,
    b11: &Factored,
    a22: &Factored,
    b22: &Factored,
    tol: &Tolerances,
) -> Result<()> {
    for (name, product) in [("A11LA22", &a11.mat * &a22.left), ("RB11B22", &b11.right * &b22.mat)] {
        let residual = product.max_entry_norm();
        if residual > tol.residual {
            return Err(QsError::SideConditionViolated { name: name.to_string(), residual });
        }
    }
    Ok(())
}

/// All three equivalent condition sets for `A11 X B11 = C1`, `A22 X B22 = C2`:
/// vanishing projections, reproduction identities, and rank equalities.
pub fn check_pair_conditions(sys: &PairSystem, tol: &Tolerances) -> Result<Vec<ConditionReport>> {
    sys.validate()?;
    let f = sys.factor(tol)?;
    check_pair_side_conditions(&f.a11, &f.b11, &f.a22, &f.b22, tol)?;
    let (c1, c2) = (&sys.c1, &sys.c2);

    // A1 = A22 L_{A11}, C11 = C2 − A22 A11† C1 B11† B22
    let a1 = Factored::new(&f.a22.mat * &f.a11.left, tol.rank)?;
    let c11 = c2 - &(&(&(&(&f.a22.mat * &f.a11.pinv) * c1) * &f.b11.pinv) * &f.b22.mat);

    let mut out = vec![
        projector_report("RA11C1", &(&f.a11.right * c1), tol),
        projector_report("C1LB11", &(c1 * &f.b11.left), tol),
        projector_report("RA22C2", &(&f.a22.right * c2), tol),
        projector_report("C2LB22", &(c2 * &f.b22.left), tol),
        projector_report("RA1C11", &(&a1.right * &c11), tol),
    ];
    for (i, (a, b, c)) in [(&f.a11, &f.b11, c1), (&f.a22, &f.b22, c2)].into_iter().enumerate() {
        let i = i + 1;
        let reproduced = &(&(&a.range_projector() * c) * &b.pinv) * &b.mat;
        out.push(equation_report(&format!("C{i}=AA'CB'B"), &reproduced, c, tol));
    }
    out.push(equation_report(
        "C1B11'B22=A11A22'C2",
        &(&(c1 * &f.b11.pinv) * &f.b22.mat),
        &(&(&f.a11.mat * &f.a22.pinv) * c2),
        tol,
    ));

    let neg_c2 = -c2;
    let block = QMatrix::block(&[
        vec![M(c1), Z, M(&f.a11.mat)],
        vec![Z, M(&neg_c2), M(&f.a22.mat)],
        vec![M(&f.b11.mat), M(&f.b22.mat), Z],
    ])?;
    for (i, (a, b, c)) in [(&f.a11, &f.b11, c1), (&f.a22, &f.b22, c2)].into_iter().enumerate() {
        let i = i + 1;
        out.push(rank_report(&format!("r(A{i}{i},C{i})"), &[&hrow(&[&a.mat, c])?], &[&a.mat], tol)?);
        out.push(rank_report(&format!("r(B{i}{i};C{i})"), &[&vcol(&[&b.mat, c])?], &[&b.mat], tol)?);
    }
    out.push(rank_report("r(pair)", &[&block], &[&f.a22.mat, &f.b11.mat], tol)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_matrix, random_mixed, random_rank};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn verdict_combination() {
        use Verdict::*;
        assert_eq!(Consistent.combine(Consistent), Consistent);
        assert_eq!(Indeterminate.combine(Inconsistent), Inconsistent);
        assert_eq!(Consistent.combine(Indeterminate), Consistent);
        assert_eq!(Consistent.combine(Inconsistent), Indeterminate);
    }

    #[test]
    fn vanishing_report_bands() {
        let r = ConditionReport::vanishing("x", ConditionForm::Projector, 5e-9, 1e-8);
        assert!(r.holds && r.indeterminate);
        let r = ConditionReport::vanishing("x", ConditionForm::Projector, 1e-12, 1e-8);
        assert!(r.holds && !r.indeterminate);
        let r = ConditionReport::vanishing("x", ConditionForm::Projector, 1.0, 1e-8);
        assert!(r.definitely_fails());
    }

    #[test]
    fn ms_identity_collapses_for_zero_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = random_rank(&mut rng, 3, 4, 2);
        let tol = Tolerances::for_inputs([&a]);
        let (l, r) =
            ms_rank_identity(&a, &QMatrix::zeros(3, 2), &QMatrix::zeros(1, 4), &QMatrix::zeros(2, 2), &QMatrix::zeros(1, 3), &tol)
                .unwrap();
        assert_eq!((l, r), (2, 2));
    }

    #[test]
    fn ms_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let (m, n, k, l, j, i) = (3, 3, rng.random_range(1..4), rng.random_range(1..4), rng.random_range(1..4), 3);
            let a = random_matrix(&mut rng, m, n);
            let b = random_mixed(&mut rng, m, k);
            let c = random_mixed(&mut rng, l, n);
            let d = random_mixed(&mut rng, j, k);
            let e = random_mixed(&mut rng, l, i);
            let tol = Tolerances::for_inputs([&a, &b, &c, &d, &e]);
            let (lhs, rhs) = ms_rank_identity(&a, &b, &c, &d, &e, &tol).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
