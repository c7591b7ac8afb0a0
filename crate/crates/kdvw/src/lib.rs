//! Batch runner for small-dispersion KdV against its Whitham asymptotics.
//!
//! `kdvw run` solves KdV for each ε, the Whitham zone for each snapshot
//! time, compares them and writes columnar tables, key/value records, a
//! checksummed manifest and SVG plots. `kdvw plot` redraws the plots from
//! an existing output directory.

// `!(a > b)` is used on purpose: NaN has to fail these checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod manifest;
pub mod pipeline;
pub mod plot;
pub mod table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Solver(#[from] kdv_whitham::Error),
    #[error("table: {0}")]
    Table(String),
    #[error("plot: {0}")]
    Plot(String),
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARTIAL: i32 = 1;
    pub const INVALID: i32 = 2;
}
