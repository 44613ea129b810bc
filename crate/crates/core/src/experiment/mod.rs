//! Batch drivers behind the command-line subcommands.
//!
//! A run partitions its trial indices (or combination ranks) into contiguous
//! chunks, folds each chunk into a [`Tally`] on its own thread, merges the
//! tallies in index order and turns the result into a [`Report`].

mod config;
mod linear;
mod polynomial;
mod report;
mod solve;
mod tally;

use std::time::Instant;

pub use config::{
    parse_range, Command, ConfigEcho, Mode, RunConfig, Variant, DEFAULT_ITERATIONS, DEFAULT_N,
    DEFAULT_SEED, POLY_N_CAP,
};
pub use report::{build_report, Report, Statistic, Verdict, SCHEMA_VERSION};
pub use tally::{error_kind, fold_range, run_chunks, Stat, Tally, Witness, WITNESS_LIMIT};

use crate::error::Result;

pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = match cfg.command {
        Command::ConjI => linear::conj_i(cfg),
        Command::Conj1 => linear::conj1(cfg),
        Command::Conj2 => linear::conj2(cfg),
        Command::Conj3 => linear::conj3(cfg),
        Command::Conj4 => linear::conj4(cfg),
        Command::Obs1 => linear::obs1(cfg),
        Command::Conj5 => polynomial::conj5(cfg),
        Command::ConjII => polynomial::conj_ii(cfg),
        Command::Obs2 => polynomial::obs2(cfg),
        Command::Solve => solve::solve(cfg),
    }?;
    report.wall_clock = start.elapsed();
    Ok(report)
}
