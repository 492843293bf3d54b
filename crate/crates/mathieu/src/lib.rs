//! Command-line front end for `mathieu-core`: argument handling, report
//! rendering, the published tables and a built-in verification suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod tables;
pub mod verify;
