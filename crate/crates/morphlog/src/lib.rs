//! Command-line front end and postulate checkers for morphological belief
//! change.

pub mod cli;
pub mod io;
pub mod postulates;
