//! The verification harness: a catalog of classified homogeneous models with
//! their expected invariants, replayable classification case scripts, and
//! deterministic reporting.

pub mod cases;
pub mod catalog;
pub mod report;
pub mod util;

pub use cases::{case_info, cases, run_case, CaseInfo};
pub use catalog::{catalog_entries, entry_info, verify_entry, EntryInfo};
pub use report::{emit_report, exit_code, Checker, Claim, Report, Verdict};
