//! File formats, CSV reporting and the run registry behind the `partcover`
//! command-line tool.

pub mod edgelist;
pub mod format;
pub mod report;
pub mod runner;
