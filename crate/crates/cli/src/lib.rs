//! Expression parsing and evaluation, named verification suites and their
//! JSON reports, shared by the `cliffweyl` binary and its tests.

pub mod eval;
pub mod parser;
pub mod suites;
