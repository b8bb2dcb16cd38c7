use std::io::Write;
use std::path::{Path, PathBuf};

use qsylv_core::conditions::{
    check_eta_rank_conditions, check_four_term_projector_conditions, check_four_term_rank_conditions,
    check_pair_conditions, check_three_term_rank_conditions,
};
use qsylv_core::genval::{gen_consistent, gen_eta_consistent, gen_inconsistent, seeded_matrix, CoefRank, GenSpec};
use qsylv_core::solvers::{solve_eta_with, FourTermCoeffs, FourTermParams};
use qsylv_core::{
    check_main, solve_axyb, solve_four_term, solve_main_with, solve_pair_system, solve_three_term, Branch,
    ConditionForm, ConditionReport, EtaAxis, FreeParameters, MainDims, MainInstance, ParamMode, QMatrix, QsError,
    SolveReport, Tolerances, Verdict,
};

use crate::error::CliError;
use crate::format::{to_map, Kind, ProblemFile, SolutionFile, FORMAT_VERSION};
use crate::problem::{eta_unknowns, four_term_unknowns, main_unknowns, three_term_unknowns, Problem};

/// Condition tables of one problem, grouped for display.
#[derive(Clone, Debug)]
pub struct Assessment {
    pub verdict: Verdict,
    pub sections: Vec<(&'static str, Vec<ConditionReport>)>,
}

impl Assessment {
    fn from_report(report: SolveReport) -> Self {
        let mut sections = vec![("rank conditions", report.rank_conditions)];
        if !report.projector_conditions.is_empty() {
            sections.push(("projector conditions", report.projector_conditions));
        }
        if !report.supplementary.is_empty() {
            sections.push(("supplementary conditions", report.supplementary));
        }
        Assessment { verdict: report.verdict, sections }
    }

    pub fn write_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (title, reports) in &self.sections {
            writeln!(out, "{title}")?;
            writeln!(out, "  {:<20} {:>5} {:>5}  {:<13} residual", "condition", "lhs", "rhs", "status")?;
            for r in reports {
                let rank = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
                let status = match (r.holds, r.indeterminate) {
                    (_, true) => "indeterminate",
                    (true, false) => "holds",
                    (false, false) => "fails",
                };
                let residual = r.residual.map_or("-".to_string(), |x| format!("{x:.3e}"));
                writeln!(
                    out,
                    "  {:<20} {:>5} {:>5}  {:<13} {}",
                    r.name,
                    rank(r.lhs_rank),
                    rank(r.rhs_rank),
                    status,
                    residual
                )?;
            }
        }
        writeln!(out, "verdict: {}", self.verdict)
    }

    pub fn all(&self) -> impl Iterator<Item = &ConditionReport> {
        self.sections.iter().flat_map(|(_, r)| r)
    }
}

/// Tolerances for a problem: scaled from its coefficients, with the
/// projector-form residual bound replaced by `tol` when given.
pub fn tolerances(problem: &Problem, tol: Option<f64>) -> Tolerances {
    let t = Tolerances::for_inputs(problem.coefficients().into_iter().map(|(_, m)| m));
    match tol {
        Some(r) => t.with_residual(r),
        None => t,
    }
}

fn padded_three_term(p: &crate::problem::ThreeTerm) -> MainInstance {
    MainInstance::three_term(&p.a11, &p.b11, &p.a22, &p.b22, &p.a33, &p.b33, &p.t1)
}

/// Evaluates every solvability condition of `problem`.
pub fn assess(problem: &Problem, tol: &Tolerances) -> Result<Assessment, CliError> {
    let report = match problem {
        Problem::Main(inst) => check_main(inst, tol)?.0,
        Problem::Eta(inst) => {
            let rank = check_eta_rank_conditions(inst, tol)?;
            let (aux, _) = check_main(&inst.aux_instance(), tol)?;
            SolveReport::new(rank, aux.projector_conditions, aux.supplementary)
        }
        Problem::ThreeTerm(p) => {
            let rank = check_three_term_rank_conditions(&p.a11, &p.b11, &p.a22, &p.b22, &p.a33, &p.b33, &p.t1, tol)?;
            let (padded, _) = check_main(&padded_three_term(p), tol)?;
            SolveReport::new(rank, padded.projector_conditions, padded.supplementary)
        }
        Problem::FourTerm(p) => {
            let rank = check_four_term_rank_conditions(&p.a1, &p.b1, &p.c3, &p.d3, &p.c4, &p.d4, &p.e1, tol)?;
            let coeffs = FourTermCoeffs::new(&p.a1, &p.b1, &p.c3, &p.d3, &p.c4, &p.d4, tol.rank)?;
            let projector = check_four_term_projector_conditions(&coeffs.view(), &p.e1, tol);
            SolveReport::new(rank, projector, Vec::new())
        }
        Problem::Pair(sys) => {
            let reports = check_pair_conditions(sys, tol)?;
            let of = |form| reports.iter().filter(|r| r.form == form).cloned().collect::<Vec<_>>();
            let (rank, projector, equation) = (of(ConditionForm::Rank), of(ConditionForm::Projector), of(ConditionForm::Equation));
            let verdict =
                Verdict::of(&rank).combine(Verdict::of(&projector)).combine(Verdict::of(&equation));
            return Ok(Assessment {
                verdict,
                sections: vec![
                    ("rank conditions", rank),
                    ("projector conditions", projector),
                    ("equation conditions", equation),
                ],
            });
        }
        Problem::Axyb(p) => {
            let zero = [
                QMatrix::zeros(p.c1.rows(), p.b1.rows()),
                QMatrix::zeros(p.a1.cols(), p.c1.cols()),
                QMatrix::zeros(p.c1.rows(), p.b1.rows()),
            ];
            let out = solve_axyb(&p.a1, &p.b1, &p.c1, [&zero[0], &zero[1], &zero[2]], tol)?;
            SolveReport::new(Vec::new(), vec![out.condition], Vec::new())
        }
    };
    Ok(Assessment::from_report(report))
}

/// How free parameters are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamChoice {
    pub random: bool,
    pub seed: u64,
}

impl ParamChoice {
    pub fn mode(self) -> ParamMode {
        if self.random {
            ParamMode::Random { seed: self.seed }
        } else {
            ParamMode::Zero
        }
    }

    fn matrices(self, shapes: &[(usize, usize)]) -> Vec<QMatrix> {
        shapes
            .iter()
            .enumerate()
            .map(|(slot, &(r, c))| {
                if self.random {
                    seeded_matrix(self.seed, slot as u64, r, c, 1.0)
                } else {
                    QMatrix::zeros(r, c)
                }
            })
            .collect()
    }
}

/// Builds one member of the general solution. Returns the unknowns in
/// [`Kind::unknown_names`] order and whether a branch choice applied.
pub fn solve_problem(
    problem: &Problem,
    params: ParamChoice,
    branch: Branch,
    tol: &Tolerances,
) -> Result<(Vec<QMatrix>, bool), CliError> {
    let out = match problem {
        Problem::Main(inst) => {
            let fp = FreeParameters::for_instance(inst, params.mode());
            (main_unknowns(&solve_main_with(inst, &fp, branch, tol)?.1), true)
        }
        Problem::Eta(inst) => {
            let fp = FreeParameters::for_instance(&inst.aux_instance(), params.mode());
            (eta_unknowns(&solve_eta_with(inst, &fp, branch, tol)?.1), true)
        }
        Problem::ThreeTerm(p) => {
            let fp = FreeParameters::for_instance(&padded_three_term(p), params.mode());
            let out =
                solve_three_term(&p.a11, &p.b11, &p.a22, &p.b22, &p.a33, &p.b33, &p.t1, &fp, branch, tol)?;
            (three_term_unknowns(&out), true)
        }
        Problem::FourTerm(p) => {
            let coeffs = FourTermCoeffs::new(&p.a1, &p.b1, &p.c3, &p.d3, &p.c4, &p.d4, tol.rank)?;
            let t = params.matrices(&FourTermParams::shapes(&coeffs.view()));
            let fp = FourTermParams { t: t.try_into().expect("eight parameters") };
            let out = solve_four_term(&p.a1, &p.b1, &p.c3, &p.d3, &p.c4, &p.d4, &p.e1, Some(&fp), tol)?;
            (four_term_unknowns(&out.solution), false)
        }
        Problem::Pair(sys) => {
            let v = params.matrices(&[sys.unknown_shape(); 3]);
            (vec![solve_pair_system(sys, Some([&v[0], &v[1], &v[2]]), tol)?.1], false)
        }
        Problem::Axyb(p) => {
            let (m, n) = p.c1.shape();
            let u = params.matrices(&[(m, p.b1.rows()), (p.a1.cols(), n), (m, p.b1.rows())]);
            let out = solve_axyb(&p.a1, &p.b1, &p.c1, [&u[0], &u[1], &u[2]], tol)?;
            if !out.consistent() {
                return Err(QsError::Inconsistent { failing: vec![out.condition] }.into());
            }
            (vec![out.x, out.y], false)
        }
    };
    Ok(out)
}

fn load(input: &Path) -> Result<(Problem, Option<f64>), CliError> {
    let file = ProblemFile::read(input)?;
    Ok((Problem::from_file(&file)?, file.tol))
}

/// `check`: prints the condition table; exit status follows the verdict.
pub fn run_check(input: &Path, tol: Option<f64>, out: &mut dyn Write) -> Result<i32, CliError> {
    let (problem, file_tol) = load(input)?;
    let tol = tolerances(&problem, tol.or(file_tol));
    let assessment = assess(&problem, &tol)?;
    assessment.write_table(out)?;
    Ok(assessment.verdict.exit_code())
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub input: PathBuf,
    pub output: PathBuf,
    pub params: ParamChoice,
    pub branch: Branch,
    pub tol: Option<f64>,
    pub eta: Option<EtaAxis>,
}

/// `solve` and `eta-solve`: prints the condition table, and unless the
/// problem is inconsistent writes a solution file and prints its residual.
pub fn run_solve(opts: &SolveOptions, require_eta: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let (mut problem, file_tol) = load(&opts.input)?;
    if require_eta && problem.kind() != Kind::Eta {
        return Err(CliError::Validation(format!("eta-solve needs a problem of kind eta, got {}", problem.kind())));
    }
    if let Some(eta) = opts.eta {
        match &mut problem {
            Problem::Eta(inst) => inst.eta = eta,
            _ => return Err(CliError::Usage("--eta applies only to problems of kind eta".into())),
        }
    }
    let tol = tolerances(&problem, opts.tol.or(file_tol));
    let assessment = assess(&problem, &tol)?;
    assessment.write_table(out)?;
    if assessment.verdict == Verdict::Inconsistent {
        writeln!(out, "no solution written")?;
        return Ok(assessment.verdict.exit_code());
    }
    let (unknowns, uses_branch) = match solve_problem(&problem, opts.params, opts.branch, &tol) {
        Ok(v) => v,
        Err(CliError::Core(QsError::Inconsistent { .. })) => {
            writeln!(out, "no solution written")?;
            return Ok(Verdict::Inconsistent.exit_code());
        }
        Err(e) => return Err(e),
    };
    let residual = problem.residual(&unknowns)?;
    let names = problem.kind().unknown_names();
    let file = SolutionFile {
        version: FORMAT_VERSION,
        kind: problem.kind(),
        branch: uses_branch.then(|| opts.branch.to_string()),
        params: Some(if opts.params.random { "random" } else { "zero" }.to_string()),
        seed: opts.params.random.then_some(opts.params.seed),
        residual: Some(residual),
        matrices: to_map(names.iter().copied().zip(&unknowns)),
    };
    file.write(&opts.output)?;
    writeln!(out, "residual: {residual:.3e}")?;
    writeln!(out, "solution written to {}", opts.output.display())?;
    Ok(assessment.verdict.exit_code())
}

/// `verify`: exit 0 iff the residual is at most `tol`, by default
/// `1e-8 · (1 + ‖rhs‖_F)`.
pub fn run_verify(input: &Path, solution: &Path, tol: Option<f64>, out: &mut dyn Write) -> Result<i32, CliError> {
    let (problem, _) = load(input)?;
    let sol = SolutionFile::read(solution)?;
    let unknowns = problem.unknowns_from(&sol)?;
    let residual = problem.residual(&unknowns)?;
    let bound = tol.unwrap_or(1e-8 * (1.0 + problem.rhs_norm()));
    let ok = residual <= bound;
    writeln!(out, "residual: {residual:.3e} (tolerance {bound:.3e})")?;
    writeln!(out, "{}", if ok { "verified" } else { "failed" })?;
    Ok(if ok { 0 } else { 2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenTarget {
    Consistent,
    Inconsistent,
    Eta(EtaAxis),
}

#[derive(Clone, Debug)]
pub struct GenOptions {
    pub target: GenTarget,
    /// One value for all sizes, or `m,n,p,q,k2,l2,k3,l3,k4,l4`
    /// (`m,p,k2,k3,k4` for η-instances).
    pub dims: Vec<usize>,
    pub seed: u64,
    pub coef_rank: CoefRank,
    pub scale: f64,
    pub output: PathBuf,
    pub witness: Option<PathBuf>,
}

pub fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("invalid dimension `{s}` in --dims"))))
        .collect()
}

fn main_dims(target: GenTarget, d: &[usize]) -> Result<MainDims, CliError> {
    match (target, d.len()) {
        (_, 1) => Ok(MainDims::square(d[0])),
        (GenTarget::Eta(_), 5) => Ok(MainDims { m: d[0], n: d[0], p: d[1], q: d[1], k2: d[2], l2: d[2], k3: d[3], l3: d[3], k4: d[4], l4: d[4] }),
        (GenTarget::Eta(_), n) => Err(CliError::Usage(format!("--dims for eta takes 1 or 5 values (m,p,k2,k3,k4), got {n}"))),
        (_, 10) => Ok(MainDims::from_array(d.try_into().expect("ten values"))),
        (_, n) => Err(CliError::Usage(format!("--dims takes 1 or 10 values (m,n,p,q,k2,l2,k3,l3,k4,l4), got {n}"))),
    }
}

/// `<stem>.witness.json` next to the problem file.
pub fn default_witness_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map_or_else(|| "problem".into(), |s| s.to_string_lossy().into_owned());
    output.with_file_name(format!("{stem}.witness.json"))
}

/// `gen`: writes a problem file, plus a witness solution for consistent kinds.
pub fn run_gen(opts: &GenOptions, out: &mut dyn Write) -> Result<i32, CliError> {
    if !(opts.scale.is_finite() && opts.scale > 0.0) {
        return Err(CliError::Usage(format!("--scale must be positive, got {}", opts.scale)));
    }
    let dims = main_dims(opts.target, &opts.dims)?;
    let spec = GenSpec::new(dims, opts.seed).with_coef_rank(opts.coef_rank).with_scale(opts.scale);
    let (problem, witness) = match opts.target {
        GenTarget::Consistent => {
            let (inst, sol) = gen_consistent(&spec);
            (Problem::Main(inst), Some((main_unknowns(&sol), Kind::Main)))
        }
        GenTarget::Inconsistent => (Problem::Main(gen_inconsistent(&spec)?), None),
        GenTarget::Eta(eta) => {
            let (inst, sol) = gen_eta_consistent(&spec, eta);
            (Problem::Eta(inst), Some((eta_unknowns(&sol), Kind::Eta)))
        }
    };
    problem.to_file(None).write(&opts.output)?;
    writeln!(out, "problem written to {}", opts.output.display())?;
    if let Some((unknowns, kind)) = witness {
        let path = opts.witness.clone().unwrap_or_else(|| default_witness_path(&opts.output));
        let file = SolutionFile {
            version: FORMAT_VERSION,
            kind,
            branch: None,
            params: None,
            seed: Some(opts.seed),
            residual: Some(problem.residual(&unknowns)?),
            matrices: to_map(kind.unknown_names().iter().copied().zip(&unknowns)),
        };
        file.write(&path)?;
        writeln!(out, "witness written to {}", path.display())?;
    }
    Ok(0)
}
