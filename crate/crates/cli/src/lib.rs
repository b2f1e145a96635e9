//! The `hdx` command-line runner: generates complexes, runs analyses and
//! verification suites over `hdx-core`, and writes JSON or CSV reports.

pub mod config;
pub mod report;
pub mod run;
pub mod suite;
