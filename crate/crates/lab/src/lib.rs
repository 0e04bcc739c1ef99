//! Std companion to `sunflower-core`: the family file format, JSON
//! certificates, multi-threaded drivers, the acceptance report and the
//! `sunflower-lab` command line.

#![warn(missing_debug_implementations)]

pub mod cli;
pub mod format;
pub mod json;
pub mod parallel;
pub mod report;
