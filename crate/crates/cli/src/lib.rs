//! File formats and subcommands of the `baire` tool.

pub mod commands;
pub mod formats;
