//! Verification harness: parameter grids, claim checks and reports.

pub mod checks;
pub mod grid;
pub mod report;
pub mod suites;

pub use grid::{parse_range, GridSpec};
pub use report::{ClaimKind, ClaimReport, Erratum, Status, SuiteReport};
pub use suites::{run, run_all, Suite, SuiteConfig};
