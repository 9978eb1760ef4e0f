//! Command-line experiment runner for swarmbench.

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
