//! Demonstration runner for `wavelab-core`: a fixed catalog of demos, each
//! producing a JSON report of named checks plus optional CSV plot data, and
//! the `wavelab` command line that drives them.

pub mod cli;
pub mod demos;
pub mod report;

pub use demos::{list_demos, run_demo, Demo, DemoError, DemoOutput, Params};
pub use report::{Check, CsvSeries, DemoReport, Provenance};
