//! Minimum control node sets by exhaustive search in increasing cardinality.

use alloc::vec::Vec;

use crate::bounds::{ceil, search_lower_bound};
use crate::certify::Certifier;
use crate::controllability::{check_cap, StateSpace};
use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Family};
use crate::state::NodeSet;

/// Default node cap for full searches.
pub const SEARCH_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop after this many minimum witnesses; `None` collects all.
    pub max_witnesses: Option<usize>,
    pub use_bound_pruning: bool,
    pub use_certificate_pruning: bool,
    pub node_cap: usize,
    /// Abort once this many candidates were examined.
    pub candidate_budget: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_witnesses: Some(1),
            use_bound_pruning: true,
            use_certificate_pruning: true,
            node_cap: SEARCH_CAP,
            candidate_budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub candidates_examined: u64,
    pub pruned_by_certificate: u64,
    /// Subsets skipped because their size is below the start bound.
    pub pruned_by_bound: u64,
    pub controllability_checks: u64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: SearchStats) {
        self.candidates_examined += other.candidates_examined;
        self.pruned_by_certificate += other.pruned_by_certificate;
        self.pruned_by_bound += other.pruned_by_bound;
        self.controllability_checks += other.controllability_checks;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub family: Family,
    pub size: usize,
    /// Minimum sets in lexicographic order of their sorted node indices.
    pub witnesses: Vec<NodeSet>,
    pub stats: SearchStats,
    pub proven_minimal: bool,
    /// Cardinality the search started at.
    pub start_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    PrunedByCertificate,
    NotControllable,
    Controllable,
}

/// Per-network state shared by all candidate evaluations.
#[derive(Debug, Clone)]
pub struct SearchPlan {
    n: usize,
    family: Family,
    space: StateSpace,
    certifier: Option<Certifier>,
    start: usize,
}

impl SearchPlan {
    pub fn new(net: &BooleanNetwork, options: &SearchOptions) -> Result<Self> {
        check_cap(net.n(), options.node_cap.min(crate::controllability::STATE_SPACE_CAP))?;
        let start = if options.use_bound_pruning {
            search_lower_bound(net)
                .map(|b| ceil(b).clamp(0, net.n() as i64) as usize)
                .unwrap_or(0)
        } else {
            0
        };
        Ok(SearchPlan {
            n: net.n(),
            family: net.family(),
            space: StateSpace::new(net)?,
            certifier: options.use_certificate_pruning.then(|| Certifier::new(net)),
            start,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start_size(&self) -> usize {
        self.start
    }

    pub fn evaluate(&self, control: NodeSet) -> Outcome {
        if let Some(c) = &self.certifier {
            if c.check(control).is_refutation() {
                return Outcome::PrunedByCertificate;
            }
        }
        if self.space.is_controllable(control) {
            Outcome::Controllable
        } else {
            Outcome::NotControllable
        }
    }

    /// Number of subsets below the start size.
    pub fn skipped_by_bound(&self) -> u64 {
        (0..self.start).map(|s| binomial(self.n, s)).sum()
    }

    pub fn finish(&self, size: usize, witnesses: Vec<NodeSet>, stats: SearchStats) -> SearchResult {
        SearchResult {
            n: self.n,
            family: self.family,
            size,
            witnesses,
            stats,
            proven_minimal: true,
            start_size: self.start,
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// `size`-subsets of `0..n` in lexicographic order of sorted indices.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, size: usize) -> Self {
        Combinations {
            n,
            idx: (0..size).collect(),
            done: size > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        if self.done {
            return None;
        }
        let out = NodeSet::from_indices(self.idx.iter().copied());
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Exact minimum control node set, single-threaded.
pub fn minimum_control_set(net: &BooleanNetwork, options: &SearchOptions) -> Result<SearchResult> {
    let plan = SearchPlan::new(net, options)?;
    let n = plan.n();
    let mut stats = SearchStats {
        pruned_by_bound: plan.skipped_by_bound(),
        ..SearchStats::default()
    };
    for size in plan.start_size()..=n {
        let mut witnesses = Vec::new();
        for cand in Combinations::new(n, size) {
            if let Some(budget) = options.candidate_budget {
                if stats.candidates_examined >= budget {
                    return Err(Error::CapExceeded {
                        n,
                        cap: options.node_cap,
                    });
                }
            }
            stats.candidates_examined += 1;
            match plan.evaluate(cand) {
                Outcome::PrunedByCertificate => stats.pruned_by_certificate += 1,
                Outcome::NotControllable => stats.controllability_checks += 1,
                Outcome::Controllable => {
                    stats.controllability_checks += 1;
                    witnesses.push(cand);
                    if options.max_witnesses.is_some_and(|w| witnesses.len() >= w) {
                        break;
                    }
                }
            }
        }
        if !witnesses.is_empty() {
            return Ok(plan.finish(size, witnesses, stats));
        }
    }
    Err(Error::NotApplicable(alloc::string::String::from(
        "no control set found, not even the full node set",
    )))
}
