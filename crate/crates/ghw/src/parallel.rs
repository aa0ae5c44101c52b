use std::fmt;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use ghw_core::enumerate::{run_work_unit, work_units};
use ghw_core::{assemble_graph, list_reductions, Census, CensusEntry, Error, GhwGraph};
use rayon::prelude::*;

use crate::config::Config;

#[derive(Debug)]
pub enum RunError {
    /// The time budget ran out before the search finished.
    BudgetExhausted {
        completed: usize,
        total: usize,
    },
    Core(Error),
    Pool(rayon::ThreadPoolBuildError),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::BudgetExhausted { completed, total } => {
                write!(f, "time budget exhausted after {completed} of {total} work units")
            }
            RunError::Core(e) => write!(f, "{e}"),
            RunError::Pool(e) => write!(f, "cannot start worker pool: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

fn pool(config: &Config) -> Result<rayon::ThreadPool, RunError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    builder.build().map_err(RunError::Pool)
}

/// Enumerates dimension `n` over the work units in parallel. `progress` is
/// called with `(completed, total)` after each unit. The merged census does
/// not depend on the worker count.
pub fn enumerate_parallel(
    n: usize,
    config: &Config,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<Census, RunError> {
    config.options().check(n)?;
    let units = work_units(n);
    let total = units.len();
    let deadline = Instant::now() + config.budget;
    let expired = AtomicBool::new(false);
    let completed = AtomicUsize::new(0);
    let out_of_time = || {
        if expired.load(Ordering::Relaxed) || Instant::now() >= deadline {
            expired.store(true, Ordering::Relaxed);
            true
        } else {
            false
        }
    };
    let entries = pool(config)?.install(|| {
        let found = units
            .par_iter()
            .map(|unit| {
                let mut monitor = || if out_of_time() { ControlFlow::Break(()) } else { ControlFlow::Continue(()) };
                let rows = run_work_unit(unit, &mut monitor)?;
                let done = completed.fetch_add(1, Ordering::Relaxed) + 1;
                progress(done, total);
                Ok(rows.into_iter().map(|r| (unit.support_size, r)).collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>, Error>>()?;
        found
            .into_par_iter()
            .flatten()
            .map(|(k, rows)| {
                if out_of_time() {
                    return Err(Error::Interrupted);
                }
                CensusEntry::from_canonical_rows(n, k, &rows)
            })
            .collect::<Result<Vec<_>, Error>>()
    });
    match entries {
        Ok(entries) => Ok(Census::from_entries(n, entries)),
        Err(Error::Interrupted) => {
            Err(RunError::BudgetExhausted { completed: completed.load(Ordering::Relaxed), total })
        }
        Err(e) => Err(e.into()),
    }
}

/// Builds the graph, computing the reductions of every vertex in parallel.
pub fn build_graph_parallel(censuses: &[Census], config: &Config) -> Result<GhwGraph, RunError> {
    let presentations: Vec<_> =
        censuses.iter().flat_map(|c| c.entries.iter().map(move |e| (c.dim, &e.presentation))).collect();
    let reductions = pool(config)?.install(|| {
        presentations
            .par_iter()
            .map(|(dim, p)| if *dim > 2 { list_reductions(p) } else { Ok(Vec::new()) })
            .collect::<Result<Vec<_>, Error>>()
    })?;
    Ok(assemble_graph(censuses, reductions)?)
}
