//! Parameter sweeps that pit the closed forms against the oracle.

mod cache;
mod config;
mod report;
mod sweep;

pub use cache::{cache_key, BettiCache, CACHE_ENV, DEFAULT_CACHE_DIR};
pub use config::{Cell, SweepConfig};
pub use report::{
    emit_table, CellReport, Check, Environment, Status, Summary, TableFormat, VerificationReport,
};
pub use sweep::{run_cell, run_sweep};
