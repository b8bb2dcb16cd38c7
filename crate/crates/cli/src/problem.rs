use qsylv_core::solvers::{FourTermSolution, ThreeTermOutcome};
use qsylv_core::{EtaAxis, EtaInstance, EtaSolution, MainInstance, MainSolution, PairSystem, QMatrix};

use crate::error::CliError;
use crate::format::{take, to_map, EtaName, Kind, ProblemFile, SolutionFile, FORMAT_VERSION};

#[derive(Clone, Debug, PartialEq)]
pub struct FourTerm {
    pub a1: QMatrix,
    pub b1: QMatrix,
    pub c3: QMatrix,
    pub d3: QMatrix,
    pub c4: QMatrix,
    pub d4: QMatrix,
    pub e1: QMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTerm {
    pub a11: QMatrix,
    pub b11: QMatrix,
    pub a22: QMatrix,
    pub b22: QMatrix,
    pub a33: QMatrix,
    pub b33: QMatrix,
    pub t1: QMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Axyb {
    pub a1: QMatrix,
    pub b1: QMatrix,
    pub c1: QMatrix,
}

/// A validated problem.
#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    Main(MainInstance),
    FourTerm(FourTerm),
    ThreeTerm(ThreeTerm),
    Pair(PairSystem),
    Axyb(Axyb),
    Eta(EtaInstance),
}

fn shape_error(what: &str, got: (usize, usize), want: (usize, usize)) -> CliError {
    CliError::Validation(format!("{what} is {}x{}, expected {}x{}", got.0, got.1, want.0, want.1))
}

fn expect_rows(name: &str, m: &QMatrix, rows: usize) -> Result<(), CliError> {
    if m.rows() != rows {
        return Err(shape_error(name, m.shape(), (rows, m.cols())));
    }
    Ok(())
}

fn expect_cols(name: &str, m: &QMatrix, cols: usize) -> Result<(), CliError> {
    if m.cols() != cols {
        return Err(shape_error(name, m.shape(), (m.rows(), cols)));
    }
    Ok(())
}

impl Problem {
    pub fn from_file(file: &ProblemFile) -> Result<Self, CliError> {
        let what = "problem";
        let mats = &file.matrices;
        for name in mats.keys() {
            if !file.kind.coefficient_names().contains(&name.as_str()) {
                return Err(CliError::Validation(format!("matrix {name} is not used by kind {}", file.kind)));
            }
        }
        if file.eta.is_some() && file.kind != Kind::Eta {
            return Err(CliError::Validation(format!("eta is only meaningful for kind eta, not {}", file.kind)));
        }
        let problem = match file.kind {
            Kind::Main => {
                let [a1, b1, a2, b2, a3, b3, a4, b4, b] =
                    take(mats, ["A1", "B1", "A2", "B2", "A3", "B3", "A4", "B4", "B"], what)?;
                let (m, n) = b.shape();
                for (name, a) in [("A1", &a1), ("A2", &a2), ("A3", &a3), ("A4", &a4)] {
                    expect_rows(name, a, m)?;
                }
                for (name, bb) in [("B1", &b1), ("B2", &b2), ("B3", &b3), ("B4", &b4)] {
                    expect_cols(name, bb, n)?;
                }
                Problem::Main(MainInstance { a1, b1, a2, b2, a3, b3, a4, b4, b })
            }
            Kind::FourTerm => {
                let [a1, b1, c3, d3, c4, d4, e1] = take(mats, ["A1", "B1", "C3", "D3", "C4", "D4", "E1"], what)?;
                let (m, n) = e1.shape();
                for (name, a) in [("A1", &a1), ("C3", &c3), ("C4", &c4)] {
                    expect_rows(name, a, m)?;
                }
                for (name, b) in [("B1", &b1), ("D3", &d3), ("D4", &d4)] {
                    expect_cols(name, b, n)?;
                }
                Problem::FourTerm(FourTerm { a1, b1, c3, d3, c4, d4, e1 })
            }
            Kind::ThreeTerm => {
                let [a11, b11, a22, b22, a33, b33, t1] =
                    take(mats, ["A11", "B11", "A22", "B22", "A33", "B33", "T1"], what)?;
                let (m, n) = t1.shape();
                for (name, a) in [("A11", &a11), ("A22", &a22), ("A33", &a33)] {
                    expect_rows(name, a, m)?;
                }
                for (name, b) in [("B11", &b11), ("B22", &b22), ("B33", &b33)] {
                    expect_cols(name, b, n)?;
                }
                Problem::ThreeTerm(ThreeTerm { a11, b11, a22, b22, a33, b33, t1 })
            }
            Kind::Pair => {
                let [a11, b11, c1, a22, b22, c2] = take(mats, ["A11", "B11", "C1", "A22", "B22", "C2"], what)?;
                let sys = PairSystem { a11, b11, c1, a22, b22, c2 };
                sys.validate().map_err(|e| CliError::Validation(e.to_string()))?;
                Problem::Pair(sys)
            }
            Kind::Axyb => {
                let [a1, b1, c1] = take(mats, ["A1", "B1", "C1"], what)?;
                expect_rows("A1", &a1, c1.rows())?;
                expect_cols("B1", &b1, c1.cols())?;
                Problem::Axyb(Axyb { a1, b1, c1 })
            }
            Kind::Eta => {
                let eta = file.eta.ok_or_else(|| CliError::Validation("kind eta requires an eta axis".into()))?.0;
                let [a1, a2, a3, a4, b] = take(mats, ["A1", "A2", "A3", "A4", "B"], what)?;
                if !b.is_square() {
                    return Err(shape_error("B", b.shape(), (b.rows(), b.rows())));
                }
                for (name, a) in [("A1", &a1), ("A2", &a2), ("A3", &a3), ("A4", &a4)] {
                    expect_rows(name, a, b.rows())?;
                }
                Problem::Eta(EtaInstance { a1, a2, a3, a4, b, eta })
            }
        };
        Ok(problem)
    }

    pub fn kind(&self) -> Kind {
        match self {
            Problem::Main(_) => Kind::Main,
            Problem::FourTerm(_) => Kind::FourTerm,
            Problem::ThreeTerm(_) => Kind::ThreeTerm,
            Problem::Pair(_) => Kind::Pair,
            Problem::Axyb(_) => Kind::Axyb,
            Problem::Eta(_) => Kind::Eta,
        }
    }

    pub fn coefficients(&self) -> Vec<(&'static str, &QMatrix)> {
        let names = self.kind().coefficient_names();
        let mats: Vec<&QMatrix> = match self {
            Problem::Main(i) => i.matrices().to_vec(),
            Problem::FourTerm(p) => vec![&p.a1, &p.b1, &p.c3, &p.d3, &p.c4, &p.d4, &p.e1],
            Problem::ThreeTerm(p) => vec![&p.a11, &p.b11, &p.a22, &p.b22, &p.a33, &p.b33, &p.t1],
            Problem::Pair(s) => vec![&s.a11, &s.b11, &s.c1, &s.a22, &s.b22, &s.c2],
            Problem::Axyb(p) => vec![&p.a1, &p.b1, &p.c1],
            Problem::Eta(i) => i.matrices().to_vec(),
        };
        names.iter().copied().zip(mats).collect()
    }

    pub fn eta(&self) -> Option<EtaAxis> {
        match self {
            Problem::Eta(i) => Some(i.eta),
            _ => None,
        }
    }

    pub fn to_file(&self, tol: Option<f64>) -> ProblemFile {
        ProblemFile {
            version: FORMAT_VERSION,
            kind: self.kind(),
            eta: self.eta().map(EtaName),
            tol,
            matrices: to_map(self.coefficients()),
        }
    }

    /// Expected shapes of the unknowns, in [`Kind::unknown_names`] order.
    pub fn unknown_shapes(&self) -> Vec<(usize, usize)> {
        match self {
            Problem::Main(i) => {
                let d = i.dims();
                vec![(d.p, d.n), (d.m, d.q), (d.k2, d.l2), (d.k3, d.l3), (d.k4, d.l4)]
            }
            Problem::FourTerm(p) => vec![
                (p.a1.cols(), p.e1.cols()),
                (p.e1.rows(), p.b1.rows()),
                (p.c3.cols(), p.d3.rows()),
                (p.c4.cols(), p.d4.rows()),
            ],
            Problem::ThreeTerm(p) => {
                vec![(p.a11.cols(), p.b11.rows()), (p.a22.cols(), p.b22.rows()), (p.a33.cols(), p.b33.rows())]
            }
            Problem::Pair(s) => vec![s.unknown_shape()],
            Problem::Axyb(p) => vec![(p.a1.cols(), p.c1.cols()), (p.c1.rows(), p.b1.rows())],
            Problem::Eta(i) => {
                let d = i.dims();
                vec![(d.p, d.m), (d.k2, d.k2), (d.k3, d.k3), (d.k4, d.k4)]
            }
        }
    }

    /// The right-hand side the residual is measured against.
    pub fn rhs(&self) -> &QMatrix {
        match self {
            Problem::Main(i) => &i.b,
            Problem::FourTerm(p) => &p.e1,
            Problem::ThreeTerm(p) => &p.t1,
            Problem::Pair(s) => &s.c1,
            Problem::Axyb(p) => &p.c1,
            Problem::Eta(i) => &i.b,
        }
    }

    /// Frobenius norm of every right-hand side (both equations for a pair).
    pub fn rhs_norm(&self) -> f64 {
        match self {
            Problem::Pair(s) => s.c1.frobenius_norm().hypot(s.c2.frobenius_norm()),
            _ => self.rhs().frobenius_norm(),
        }
    }

    /// Frobenius norm of the difference between both sides at `unknowns`
    /// (given in [`Kind::unknown_names`] order).
    pub fn residual(&self, x: &[QMatrix]) -> Result<f64, CliError> {
        let r = match self {
            Problem::Main(i) => {
                let sol = MainSolution {
                    x1: x[0].clone(),
                    x2: x[1].clone(),
                    y1: x[2].clone(),
                    y2: x[3].clone(),
                    y3: x[4].clone(),
                    branch: Default::default(),
                };
                (&i.apply(&sol)? - &i.b).frobenius_norm()
            }
            Problem::FourTerm(p) => {
                let lhs = p.a1.matmul(&x[0])?.try_add(&x[1].matmul(&p.b1)?)?;
                let lhs = lhs.try_add(&p.c3.matmul(&x[2])?.matmul(&p.d3)?)?;
                let lhs = lhs.try_add(&p.c4.matmul(&x[3])?.matmul(&p.d4)?)?;
                (&lhs - &p.e1).frobenius_norm()
            }
            Problem::ThreeTerm(p) => {
                let mut lhs = QMatrix::zeros(p.t1.rows(), p.t1.cols());
                for ((a, b), y) in [(&p.a11, &p.b11), (&p.a22, &p.b22), (&p.a33, &p.b33)].into_iter().zip(x) {
                    lhs = lhs.try_add(&a.matmul(y)?.matmul(b)?)?;
                }
                (&lhs - &p.t1).frobenius_norm()
            }
            Problem::Pair(s) => {
                let r1 = (&s.a11.matmul(&x[0])?.matmul(&s.b11)? - &s.c1).frobenius_norm();
                let r2 = (&s.a22.matmul(&x[0])?.matmul(&s.b22)? - &s.c2).frobenius_norm();
                r1.hypot(r2)
            }
            Problem::Axyb(p) => (&p.a1.matmul(&x[0])?.try_add(&x[1].matmul(&p.b1)?)? - &p.c1).frobenius_norm(),
            Problem::Eta(i) => {
                let sol = EtaSolution { x1: x[0].clone(), y1: x[1].clone(), y2: x[2].clone(), y3: x[3].clone() };
                (&i.apply(&sol)? - &i.b).frobenius_norm()
            }
        };
        Ok(r)
    }

    /// Reads the unknowns of `file`, checking kind and shapes.
    pub fn unknowns_from(&self, file: &SolutionFile) -> Result<Vec<QMatrix>, CliError> {
        if file.kind != self.kind() {
            return Err(CliError::Validation(format!(
                "solution is for kind {} but the problem is {}",
                file.kind,
                self.kind()
            )));
        }
        let names = self.kind().unknown_names();
        let mut out = Vec::with_capacity(names.len());
        for (name, shape) in names.iter().zip(self.unknown_shapes()) {
            let m = file
                .matrices
                .get(*name)
                .ok_or_else(|| CliError::Validation(format!("solution: missing matrix {name}")))?
                .to_matrix(name)?;
            if m.shape() != shape {
                return Err(shape_error(&format!("solution {name}"), m.shape(), shape));
            }
            out.push(m);
        }
        Ok(out)
    }
}

pub fn main_unknowns(sol: &MainSolution) -> Vec<QMatrix> {
    vec![sol.x1.clone(), sol.x2.clone(), sol.y1.clone(), sol.y2.clone(), sol.y3.clone()]
}

pub fn four_term_unknowns(sol: &FourTermSolution) -> Vec<QMatrix> {
    vec![sol.x1.clone(), sol.x2.clone(), sol.x3.clone(), sol.x4.clone()]
}

pub fn three_term_unknowns(out: &ThreeTermOutcome) -> Vec<QMatrix> {
    vec![out.y1.clone(), out.y2.clone(), out.y3.clone()]
}

pub fn eta_unknowns(sol: &EtaSolution) -> Vec<QMatrix> {
    vec![sol.x1.clone(), sol.y1.clone(), sol.y2.clone(), sol.y3.clone()]
}
