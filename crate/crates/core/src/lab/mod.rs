//! Accuracy experiments run over every number kind: a drifting timer, the
//! school quadratic formula, Rump's polynomial and an ill-conditioned
//! Jordan system. Each run yields a [`ScenarioReport`] with golden checks.

mod lu;
mod number;
mod report;
mod scenarios;

pub use lu::{lu_solve, LuError, Matrix};
pub use number::{Kind, LabNumber};
pub use report::{
    digits_tolerance, report_emit, Expectation, OutputFormat, Quantity, ScenarioReport, Tolerance, Verdict,
};
pub use scenarios::{
    jordan_system, parse_coefficient, rump_polynomial, run_jordan, run_quadratic, run_rump, run_summation,
    JordanConfig, JordanVariant, LabError, QuadraticConfig, RumpOrder, SummationConfig, RUMP_A, RUMP_B, TICKS_PER_HOUR,
};
