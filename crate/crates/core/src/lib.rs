//! Dense quaternion linear algebra and closed-form solvers for Sylvester-type
//! quaternion matrix equations of the form
//!
//! ```text
//! A1 X1 + X2 B1 + A2 Y1 B2 + A3 Y2 B3 + A4 Y3 B4 = B
//! ```
//!
//! together with the reduced two-, three- and four-term variants and the
//! η-Hermitian form `A1 X1 + (A1 X1)^{η*} + Σ Ai Yi Ai^{η*} = B`.
//!
//! Ranks and Moore–Penrose inverses are computed through the complex adjoint
//! embedding using a one-sided Jacobi SVD.

pub mod conditions;
pub mod decomp;
pub mod error;
pub mod genval;
pub mod matrix;
pub mod quaternion;
pub mod solvers;

#[cfg(test)]
pub(crate) mod testutil;

pub use conditions::{ConditionForm, ConditionReport, Tolerances, Verdict};
pub use decomp::{complex_svd, pinv, projectors, qrank, rank_info, Factored, Projectors, PseudoinverseResult, RankInfo, Svd, Tol};
pub use error::{QsError, Result};
pub use matrix::{Block, ComplexMatrix, QMatrix};
pub use quaternion::{EtaAxis, Quaternion};
pub use solvers::{
    check_main, solve_axyb, solve_eta, solve_four_term, solve_main, solve_main_with, solve_pair_system, solve_three_term,
    Branch, EtaInstance, EtaSolution, FourTermSolution, FreeParameters, MainDerived, MainDims, MainInstance,
    MainSolution, PairSystem, ParamMode, SolveReport,
};
