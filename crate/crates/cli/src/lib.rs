//! File formats and command implementations behind the `qsylv` binary.
//!
//! Exit statuses: 0 consistent or verified, 1 usage, parse or validation
//! error, 2 inconsistent or verification failed, 3 indeterminate, 4 the
//! generator could not produce the requested instance.

pub mod commands;
pub mod error;
pub mod format;
pub mod problem;

pub use commands::{run_check, run_gen, run_solve, run_verify, Assessment, GenOptions, GenTarget, ParamChoice, SolveOptions};
pub use error::CliError;
pub use format::{Kind, MatrixJson, ProblemFile, SolutionFile};
pub use problem::Problem;
