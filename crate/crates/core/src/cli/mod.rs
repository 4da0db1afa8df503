//! Verification suites, the statistical factor demo and report assembly
//! behind the `owf` binary.

mod factor;
mod report;
#[cfg(feature = "cli")]
mod suites;

pub use factor::{factor_demo, factor_samples, FactorStats, MIN_FACTOR_SAMPLES};
pub use report::{digest, Check, Report, Status};
#[cfg(feature = "cli")]
pub use suites::{run_dump, run_factor_demo, run_kernel, run_verify, Dump, Params, Suite, DEFAULT_SEED};
