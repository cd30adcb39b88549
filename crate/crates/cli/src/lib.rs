//! The `mct` command-line pipeline: tag articles, label spans, fit
//! thresholds, detect code-mixed spans and evaluate the results.

pub mod args;
pub mod commands;
pub mod config;
pub mod failure;
pub mod fits;
pub mod io;
pub mod table;
