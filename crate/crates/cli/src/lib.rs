//! Command-line pipelines over the exact engine and the point-check harness.

pub mod docs;
pub mod output;
pub mod pipeline;

pub use output::{Output, ReportBody};
pub use pipeline::{InputError, LiftKind, Overrides};
