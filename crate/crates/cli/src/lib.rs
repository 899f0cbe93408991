//! File formats, DOT export, configuration and the `upg` command line.

pub mod check;
pub mod commands;
pub mod config;
pub mod dot;
pub mod format;
