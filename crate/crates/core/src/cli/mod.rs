//! Deterministic harness: seeded parameter fuzzing, suite execution and
//! report serialization.

mod fuzz;
mod report;
mod suite;

pub use fuzz::FuzzSource;
pub use report::{write_reports, CheckReport, Format};
pub use suite::{run_suite, Suite, SuiteOptions, SuiteRun};
