//! Runs several algorithms over shared inputs on worker threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use likemind_core::sweep::{run_algorithm, AlgorithmCode, AlgorithmRun, MetricSeries, SimSources, SweepConfig};
use likemind_core::Graph;
use log::{info, warn};

use crate::error::Result;

/// Node count above which Girvan-Newman runs get a warning.
pub const GIRVAN_NEWMAN_WARN_NODES: usize = 5_000;

/// Runs every code, up to `threads` at a time. Results come back in the
/// order of `codes` regardless of which finishes first.
pub fn run_all(
    g: &Graph,
    sims: &SimSources<'_>,
    codes: &[AlgorithmCode],
    config: SweepConfig,
    threads: usize,
) -> Result<Vec<AlgorithmRun>> {
    if g.node_count() > GIRVAN_NEWMAN_WARN_NODES && codes.iter().any(|c| c.as_str() == "GN") {
        warn!(
            "Girvan-Newman on {} nodes will be slow (cubic-time edge removal loop)",
            g.node_count()
        );
    }
    let slots: Vec<Mutex<Option<likemind_core::Result<AlgorithmRun>>>> = codes.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads.clamp(1, codes.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&code) = codes.get(i) else { break };
                let started = std::time::Instant::now();
                let result = run_algorithm(code, g, sims, config);
                info!("{code}: finished in {:.3}s", started.elapsed().as_secs_f64());
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    let mut runs = Vec::with_capacity(codes.len());
    for slot in slots {
        runs.push(slot.into_inner().unwrap().expect("every code was run")?);
    }
    Ok(runs)
}

pub fn series(runs: &[AlgorithmRun]) -> MetricSeries {
    MetricSeries { rows: runs.iter().flat_map(|r| r.rows.iter().cloned()).collect() }
}
