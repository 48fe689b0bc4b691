//! Library half of the command-line front end: verification suites and the
//! structure-constant table cache. The binary in `main.rs` is a thin
//! argument-parsing layer over these.

pub mod cache;
pub mod suites;
