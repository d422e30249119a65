//! Data files, report tables and the command-line interface.

pub mod cli;
pub mod data;
pub mod report;
