//! Command implementations behind the `epl` binary.

pub mod commands;
pub mod format;
pub mod input;
pub mod published;
pub mod report;
