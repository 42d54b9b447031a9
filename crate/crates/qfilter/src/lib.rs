//! File formats, text and JSON reports, and the subcommands behind the
//! `qfilter` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;
