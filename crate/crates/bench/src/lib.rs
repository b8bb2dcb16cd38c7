//! Fixtures shared by the benchmarks.

use qsylv_core::genval::{gen_consistent, CoefRank, GenSpec};
use qsylv_core::solvers::MainDims;
use qsylv_core::MainInstance;

/// Consistent square instance with mixed-rank coefficients.
pub fn instance(n: usize, seed: u64) -> MainInstance {
    gen_consistent(&GenSpec::new(MainDims::square(n), seed).with_coef_rank(CoefRank::Random)).0
}
