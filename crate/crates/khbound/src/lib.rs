//! File formats, knot tables, configuration and batch helpers for the
//! `khbound` command-line tool.

pub mod config;
pub mod error;
pub mod fixtures;
pub mod formats;

use khbound_core::reduction::ScanProgress;
use khbound_core::{kh_table, Backend, ComputeConfig, ComputeError, Diagram, KhTable};
use rayon::prelude::*;

pub use error::CliError;
pub use fixtures::{bundled_table, ingest_table, KnotTableEntry};

/// Computes tables for many diagrams on a pool of `jobs` threads, keeping
/// input order.
pub fn compute_batch(
    diagrams: &[Diagram],
    backend: Backend,
    config: &ComputeConfig,
    jobs: usize,
) -> Result<Vec<Result<KhTable, ComputeError>>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(|| diagrams.par_iter().map(|d| kh_table(d, backend, config)).collect()))
}

/// Progress line for a scan snapshot.
pub fn progress_line(p: &ScanProgress) -> String {
    format!(
        "crossing {}/{}: {} live generators (peak {}), boundary {}",
        p.processed, p.total, p.live, p.peak_live, p.boundary
    )
}
