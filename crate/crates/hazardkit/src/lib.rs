//! File formats, reports and the command line on top of `hazardkit_core`.

pub mod cli;
pub mod config;
pub mod document;
pub mod parallel;
pub mod report;
pub mod text;
