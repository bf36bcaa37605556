//! Command-line front end: edge-list files, result documents, DOT output and
//! benchmarks.

pub mod bench;
pub mod commands;
pub mod dot;
pub mod edgelist;
pub mod report;
