//! Batch verification: suite configuration, deterministic execution and
//! JSON / markdown reports.

pub mod anchors;
pub mod config;
pub mod result;
pub mod suites;

pub use anchors::{anchor_group, is_known_anchor, ANCHORS};
pub use config::{Format, Suite, SuiteConfig};
pub use result::{emit_report, exit_code, parse_report, report_json, summarize, CheckResult, Status, Summary};
pub use suites::{check_rng, run_check, run_suite, CheckSpec, CHECKS};
