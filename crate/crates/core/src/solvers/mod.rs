//! Closed-form solvers, from the two-term equation `A1 X + Y B1 = C1` up to the
//! five-term equation and its η-Hermitian variant.

mod axyb;
mod eta;
mod four_term;
mod main_eq;
mod pair;
mod three_term;

use std::fmt;
use std::str::FromStr;

use crate::conditions::{ConditionReport, Verdict};
use crate::error::{QsError, Result};
use crate::matrix::QMatrix;

pub use axyb::{axyb_formula, solve_axyb, AxybOutcome};
pub use eta::{solve_eta, solve_eta_with, EtaDims, EtaInstance, EtaSolution};
pub use four_term::{
    four_term_formula, solve_four_term, FourTermCoeffs, FourTermOutcome, FourTermParams, FourTermSolution, FourTermView,
};
pub use main_eq::{check_main, derive_main_quantities, solve_main, solve_main_with, MainDerived};
pub use pair::{pair_formula, solve_pair_system, PairFactors, PairSystem};
pub use three_term::{solve_three_term, ThreeTermOutcome};

/// Product of a chain of matrices. Panics on a shape mismatch, which inside
/// the solvers indicates a bug rather than bad input.
pub(crate) fn chain(mats: &[&QMatrix]) -> QMatrix {
    let (first, rest) = mats.split_first().expect("empty product");
    rest.iter().fold((*first).clone(), |acc, m| &acc * *m)
}

/// The five-term equation `A1 X1 + X2 B1 + A2 Y1 B2 + A3 Y2 B3 + A4 Y3 B4 = B`.
#[derive(Clone, Debug, PartialEq)]
pub struct MainInstance {
    pub a1: QMatrix,
    pub b1: QMatrix,
    pub a2: QMatrix,
    pub b2: QMatrix,
    pub a3: QMatrix,
    pub b3: QMatrix,
    pub a4: QMatrix,
    pub b4: QMatrix,
    pub b: QMatrix,
}

/// Sizes of a five-term instance: `B` is `m × n`, `A1` is `m × p`, `B1` is
/// `q × n`, and `A_i`, `B_i` (i = 2, 3, 4) are `m × k_i`, `l_i × n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MainDims {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub k2: usize,
    pub l2: usize,
    pub k3: usize,
    pub l3: usize,
    pub k4: usize,
    pub l4: usize,
}

impl MainDims {
    pub fn square(n: usize) -> Self {
        MainDims { m: n, n, p: n, q: n, k2: n, l2: n, k3: n, l3: n, k4: n, l4: n }
    }

    pub fn to_array(self) -> [usize; 10] {
        [self.m, self.n, self.p, self.q, self.k2, self.l2, self.k3, self.l3, self.k4, self.l4]
    }

    pub fn from_array(d: [usize; 10]) -> Self {
        MainDims { m: d[0], n: d[1], p: d[2], q: d[3], k2: d[4], l2: d[5], k3: d[6], l3: d[7], k4: d[8], l4: d[9] }
    }
}

impl MainInstance {
    pub fn zeros(d: MainDims) -> Self {
        MainInstance {
            a1: QMatrix::zeros(d.m, d.p),
            b1: QMatrix::zeros(d.q, d.n),
            a2: QMatrix::zeros(d.m, d.k2),
            b2: QMatrix::zeros(d.l2, d.n),
            a3: QMatrix::zeros(d.m, d.k3),
            b3: QMatrix::zeros(d.l3, d.n),
            a4: QMatrix::zeros(d.m, d.k4),
            b4: QMatrix::zeros(d.l4, d.n),
            b: QMatrix::zeros(d.m, d.n),
        }
    }

    pub fn dims(&self) -> MainDims {
        MainDims {
            m: self.b.rows(),
            n: self.b.cols(),
            p: self.a1.cols(),
            q: self.b1.rows(),
            k2: self.a2.cols(),
            l2: self.b2.rows(),
            k3: self.a3.cols(),
            l3: self.b3.rows(),
            k4: self.a4.cols(),
            l4: self.b4.rows(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = self.b.shape();
        for (name, a) in [("A1", &self.a1), ("A2", &self.a2), ("A3", &self.a3), ("A4", &self.a4)] {
            if a.rows() != m {
                return Err(QsError::DimensionMismatch(format!("{name} has {} rows but B has {m}", a.rows())));
            }
        }
        for (name, b) in [("B1", &self.b1), ("B2", &self.b2), ("B3", &self.b3), ("B4", &self.b4)] {
            if b.cols() != n {
                return Err(QsError::DimensionMismatch(format!("{name} has {} columns but B has {n}", b.cols())));
            }
        }
        Ok(())
    }

    pub fn matrices(&self) -> [&QMatrix; 9] {
        [&self.a1, &self.b1, &self.a2, &self.b2, &self.a3, &self.b3, &self.a4, &self.b4, &self.b]
    }

    /// `A1 X1 + X2 B1 + A2 Y1 B2 + A3 Y2 B3 + A4 Y3 B4`
    pub fn apply(&self, sol: &MainSolution) -> Result<QMatrix> {
        let terms = [
            self.a1.matmul(&sol.x1)?,
            sol.x2.matmul(&self.b1)?,
            self.a2.matmul(&sol.y1)?.matmul(&self.b2)?,
            self.a3.matmul(&sol.y2)?.matmul(&self.b3)?,
            self.a4.matmul(&sol.y3)?.matmul(&self.b4)?,
        ];
        let mut acc = QMatrix::zeros(self.b.rows(), self.b.cols());
        for t in &terms {
            acc = acc.try_add(t)?;
        }
        Ok(acc)
    }
}

/// Which of the two equivalent closed forms builds `Y3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branch {
    #[default]
    F1,
    F2,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::F1 => "f1",
            Branch::F2 => "f2",
        })
    }
}

impl FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(Branch::F1),
            "f2" => Ok(Branch::F2),
            other => Err(format!("unknown branch {other:?} (expected f1 or f2)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainSolution {
    pub x1: QMatrix,
    pub x2: QMatrix,
    pub y1: QMatrix,
    pub y2: QMatrix,
    pub y3: QMatrix,
    pub branch: Branch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamMode {
    Zero,
    Random { seed: u64 },
}

/// Shapes of the free parameters of the five-term general solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamShapes {
    pub u: [(usize, usize); 8],
    pub u11: (usize, usize),
    pub u12: (usize, usize),
    pub u21: (usize, usize),
    pub u31: (usize, usize),
    pub u32: (usize, usize),
    pub u33: (usize, usize),
    pub u41: (usize, usize),
    pub u42: (usize, usize),
}

impl ParamShapes {
    pub fn for_dims(d: MainDims) -> Self {
        let y1 = (d.k2, d.l2);
        let y2 = (d.k3, d.l3);
        let y3 = (d.k4, d.l4);
        ParamShapes {
            u: [(d.m, d.q), (d.p, d.n), (d.m, d.q), y2, y1, y1, y2, y2],
            u11: (d.k4, 2 * d.l4),
            u12: (2 * d.k4, d.l4),
            u21: (d.k4, 2 * d.l4),
            u31: y3,
            u32: y3,
            u33: y3,
            u41: y3,
            u42: y3,
        }
    }

    fn all(&self) -> [(usize, usize); 16] {
        let u = self.u;
        [
            u[0], u[1], u[2], u[3], u[4], u[5], u[6], u[7], self.u11, self.u12, self.u21, self.u31, self.u32, self.u33,
            self.u41, self.u42,
        ]
    }
}

/// Arbitrary matrices parameterizing the general solution. `u[0]` … `u[7]`
/// are `U1` … `U8`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeParameters {
    pub u: [QMatrix; 8],
    pub u11: QMatrix,
    pub u12: QMatrix,
    pub u21: QMatrix,
    pub u31: QMatrix,
    pub u32: QMatrix,
    pub u33: QMatrix,
    pub u41: QMatrix,
    pub u42: QMatrix,
    pub mode: ParamMode,
}

impl FreeParameters {
    fn from_list(mut mats: Vec<QMatrix>, mode: ParamMode) -> Self {
        let tail: Vec<QMatrix> = mats.split_off(8);
        let u: [QMatrix; 8] = mats.try_into().expect("eight U parameters");
        let [u11, u12, u21, u31, u32, u33, u41, u42]: [QMatrix; 8] = tail.try_into().expect("eight parameters");
        FreeParameters { u, u11, u12, u21, u31, u32, u33, u41, u42, mode }
    }

    pub fn zeros(shapes: &ParamShapes) -> Self {
        let mats = shapes.all().iter().map(|&(r, c)| QMatrix::zeros(r, c)).collect();
        FreeParameters::from_list(mats, ParamMode::Zero)
    }

    /// Entries uniform in `[−1, 1]` per component; parameter `i` is drawn from
    /// stream `i` of a ChaCha8 generator seeded with `seed`.
    pub fn random(shapes: &ParamShapes, seed: u64) -> Self {
        let mats = shapes
            .all()
            .iter()
            .enumerate()
            .map(|(slot, &(r, c))| crate::genval::seeded_matrix(seed, slot as u64, r, c, 1.0))
            .collect();
        FreeParameters::from_list(mats, ParamMode::Random { seed })
    }

    pub fn for_instance(inst: &MainInstance, mode: ParamMode) -> Self {
        let shapes = ParamShapes::for_dims(inst.dims());
        match mode {
            ParamMode::Zero => FreeParameters::zeros(&shapes),
            ParamMode::Random { seed } => FreeParameters::random(&shapes, seed),
        }
    }

    pub fn shapes(&self) -> ParamShapes {
        let u = &self.u;
        ParamShapes {
            u: [
                u[0].shape(),
                u[1].shape(),
                u[2].shape(),
                u[3].shape(),
                u[4].shape(),
                u[5].shape(),
                u[6].shape(),
                u[7].shape(),
            ],
            u11: self.u11.shape(),
            u12: self.u12.shape(),
            u21: self.u21.shape(),
            u31: self.u31.shape(),
            u32: self.u32.shape(),
            u33: self.u33.shape(),
            u41: self.u41.shape(),
            u42: self.u42.shape(),
        }
    }
}

/// Condition reports and verdict of a solve or check.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub rank_conditions: Vec<ConditionReport>,
    pub projector_conditions: Vec<ConditionReport>,
    /// Vanishing products implied by consistency beyond the headline list.
    pub supplementary: Vec<ConditionReport>,
    /// Frobenius residual of the constructed solution, when one was built.
    pub residual: Option<f64>,
}

impl SolveReport {
    /// The verdict combines the rank family with the projector family
    /// (headline and supplementary together).
    pub fn new(
        rank_conditions: Vec<ConditionReport>,
        projector_conditions: Vec<ConditionReport>,
        supplementary: Vec<ConditionReport>,
    ) -> Self {
        let projector_side: Vec<ConditionReport> =
            projector_conditions.iter().chain(&supplementary).cloned().collect();
        let verdict = if projector_side.is_empty() {
            Verdict::of(&rank_conditions)
        } else if rank_conditions.is_empty() {
            Verdict::of(&projector_side)
        } else {
            Verdict::of(&rank_conditions).combine(Verdict::of(&projector_side))
        };
        SolveReport { verdict, rank_conditions, projector_conditions, supplementary, residual: None }
    }

    pub fn rank_verdict(&self) -> Verdict {
        Verdict::of(&self.rank_conditions)
    }

    pub fn projector_verdict(&self) -> Verdict {
        let all: Vec<ConditionReport> =
            self.projector_conditions.iter().chain(&self.supplementary).cloned().collect();
        Verdict::of(&all)
    }

    pub fn all_conditions(&self) -> impl Iterator<Item = &ConditionReport> {
        self.rank_conditions.iter().chain(&self.projector_conditions).chain(&self.supplementary)
    }

    pub fn failing(&self) -> Vec<ConditionReport> {
        self.all_conditions().filter(|r| !r.holds).cloned().collect()
    }
}
