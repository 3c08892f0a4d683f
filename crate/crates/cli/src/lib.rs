//! Command language, sessions, sweeps and reports for the `gorinj` binary.

pub mod command;
pub mod report;
pub mod session;
pub mod sweep;
