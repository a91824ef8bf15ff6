//! Orchestration behind the `hecke` binary: run reports, configuration and
//! the individual commands.

pub mod commands;
pub mod config;
pub mod report;
