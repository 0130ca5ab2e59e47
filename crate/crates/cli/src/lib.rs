//! Command-line verification front end: suite runner and report rendering.

pub mod report;
pub mod suite;
