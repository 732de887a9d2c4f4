//! Multi-threaded minimum control set search.
//!
//! Candidates are evaluated in parallel chunk by chunk, then scanned in
//! lexicographic order, so witnesses and stats equal the sequential search.

use bnctl_core::search::{Combinations, Outcome, SearchPlan, SearchStats};
use bnctl_core::{BooleanNetwork, Error, NodeSet, SearchOptions, SearchResult};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

const CHUNK: usize = 2048;

pub fn thread_pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))
}

pub fn parallel_minimum_control_set(
    net: &BooleanNetwork,
    options: &SearchOptions,
    jobs: usize,
) -> CliResult<SearchResult> {
    if jobs <= 1 {
        return Ok(bnctl_core::minimum_control_set(net, options)?);
    }
    let plan = SearchPlan::new(net, options)?;
    let pool = thread_pool(jobs)?;
    let n = plan.n();
    let mut stats = SearchStats {
        pruned_by_bound: plan.skipped_by_bound(),
        ..SearchStats::default()
    };
    for size in plan.start_size()..=n {
        let mut witnesses = Vec::new();
        let mut combos = Combinations::new(n, size).peekable();
        'size: while combos.peek().is_some() {
            let chunk: Vec<NodeSet> = combos.by_ref().take(CHUNK).collect();
            let outcomes: Vec<Outcome> = pool.install(|| chunk.par_iter().map(|&c| plan.evaluate(c)).collect());
            for (&cand, outcome) in chunk.iter().zip(outcomes) {
                if let Some(budget) = options.candidate_budget {
                    if stats.candidates_examined >= budget {
                        return Err(Error::CapExceeded {
                            n,
                            cap: options.node_cap,
                        }
                        .into());
                    }
                }
                stats.candidates_examined += 1;
                match outcome {
                    Outcome::PrunedByCertificate => stats.pruned_by_certificate += 1,
                    Outcome::NotControllable => stats.controllability_checks += 1,
                    Outcome::Controllable => {
                        stats.controllability_checks += 1;
                        witnesses.push(cand);
                        if options.max_witnesses.is_some_and(|w| witnesses.len() >= w) {
                            break 'size;
                        }
                    }
                }
            }
        }
        if !witnesses.is_empty() {
            return Ok(plan.finish(size, witnesses, stats));
        }
    }
    Err(Error::NotApplicable("no control set found, not even the full node set".into()).into())
}
